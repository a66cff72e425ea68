#pragma once
// Frequencies: strictly increasing, nonnegative real sequences tending to
// +infinity, plus finite-prefix diagnostics for the two gap regularity
// conditions and the upper density
//
//   L = limsup_n (log n) / lambda_n.
//
// The gap conditions probed here, for a frequency (lambda_n):
//
//   geometric-gap condition with index l ("BC"):
//       for all delta > 0 there is C > 0 with
//       lambda_{n+1} - lambda_n >= C * exp(-(l + delta) * lambda_n),
//
//   doubly-exponential-gap condition ("LC"):
//       for all delta > 0 there is C > 0 with
//       lambda_{n+1} - lambda_n >= C * exp(-exp(delta * lambda_n)).
//
// A finite prefix can never prove or refute an asymptotic statement, so every
// verdict here is explicitly evidence-only: the statistic
//   stat_n = log(gap_n) + weight(lambda_n)
// is tracked in log space (the LC weight exp(exp(delta*lambda)) overflows
// doubles long before interesting prefixes end), its running infimum is
// recorded at geometrically spaced checkpoints, and a documented trend rule
// turns the checkpoint curve into {evidence_holds, evidence_fails,
// inconclusive}. See check_bohr_gap / check_landau_gap for the rule.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dlab/common.hpp"

namespace dlab {

enum class Verdict { evidence_holds, evidence_fails, inconclusive };

std::string to_string(Verdict v);

// A frequency is either one of the built-in rules or an explicit validated
// list. Rule grammar (exact-match after whitespace stripping):
//   "log(n)"       lambda_k = log k           (k = 1, 2, ...; ordinary case)
//   "n"            lambda_k = k - 1           (0, 1, 2, ...; power series case)
//   "sqrt(log(n))" lambda_k = sqrt(log k)
//   "log(log(n))"  lambda_k = log log (k+2)   (index shifted so entries are
//                                              nonnegative; starts the
//                                              classical sequence at n = 3)
//   "file:<path>"  one float per line, '#' comments allowed; must be strictly
//                  increasing and nonnegative.
class Frequency {
public:
    enum class Kind { log_n, integer_n, sqrt_log_n, log_log_n, listed };

    static Frequency parse(const std::string& spec);
    static Frequency from_values(std::vector<double> values, std::string label = "listed");

    // 1-based index, matching the mathematical convention lambda_1, lambda_2, ...
    double entry(std::int64_t n) const;
    std::vector<double> prefix(std::int64_t count) const;

    // Number of entries available (INT64_MAX for rule-generated frequencies).
    std::int64_t max_index() const;

    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }

private:
    Kind kind_ = Kind::listed;
    std::string label_;
    std::vector<double> values_;  // only for Kind::listed
};

struct TrendPoint {
    std::int64_t n;    // prefix length of the checkpoint
    double value;      // running statistic at that checkpoint (see each op)
};

struct ConditionReport {
    std::string condition;  // "BC", "LC" or "L"
    double l = 0.0;         // BC only
    double delta = 0.0;     // BC/LC only
    std::int64_t N = 0;     // prefix length inspected
    // BC/LC: running infimum of the gap statistic, in log space and (when it
    // does not underflow) in plain units. L: the tail-sup estimate.
    double log_witness = 0.0;
    double witness = 0.0;
    std::int64_t witness_index = 0;  // n attaining the infimum / sup
    std::vector<TrendPoint> trend;   // checkpoint curve backing the verdict
    Verdict verdict = Verdict::inconclusive;
    bool diverging = false;          // L only: tail sups still growing
    std::vector<std::string> notes;
};

// Gap condition with weight exp((l+delta)*lambda_n). Trend rule: with s_k the
// running infimum of the log statistic at checkpoint k, compare the last
// checkpoint against the geometric midpoint:
//   s_last >= s_mid - 0.01  -> evidence_holds   (infimum stabilized)
//   s_last <= s_mid - 0.25  -> evidence_fails   (still sliding to 0)
//   otherwise              -> inconclusive.
ConditionReport check_bohr_gap(const Frequency& f, double l, double delta, std::int64_t N);

// Gap condition with weight exp(exp(delta*lambda_n)); same trend rule. The
// weight's exponent is clamped at 1e300 with a note (the infimum of any
// non-degenerate case is attained long before the clamp can matter).
ConditionReport check_landau_gap(const Frequency& f, double delta, std::int64_t N);

// L = limsup (log n)/lambda_n estimated on a prefix. Entries with
// lambda_n = 0 are skipped with a note. Trend = tail sup of the ratio for
// geometrically spaced tail starts. Classification compares the sup over the
// trailing half window W_last = sup_{N/2 < n <= N} against the early window
// W_first = sup_{2 <= n <= max(8, sqrt(N))}:
//   W_last > 1.10 * W_first -> diverging (verdict evidence_fails for "L finite")
//   W_last <= 1.03 * W_first -> finite, estimate = W_last (evidence_holds)
//   otherwise -> inconclusive.
ConditionReport l_value(const Frequency& f, std::int64_t N);

}  // namespace dlab
