#include "dlab/frequency.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace dlab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::evidence_holds: return "evidence-holds";
        case Verdict::evidence_fails: return "evidence-fails";
        default: return "inconclusive";
    }
}

namespace {

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
}

double rule_value(Frequency::Kind kind, std::int64_t n) {
    const double nn = static_cast<double>(n);
    switch (kind) {
        case Frequency::Kind::log_n: return std::log(nn);
        case Frequency::Kind::integer_n: return nn - 1.0;
        case Frequency::Kind::sqrt_log_n: return std::sqrt(std::log(nn));
        case Frequency::Kind::log_log_n: return std::log(std::log(nn + 2.0));
        default: return 0.0;
    }
}

std::vector<double> load_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("freq-file-unreadable", "cannot open frequency file '" + path + "'");
    }
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double x;
        while (ls >> x) values.push_back(x);
    }
    if (values.empty()) {
        throw Error("freq-file-empty", "frequency file '" + path + "' has no entries");
    }
    return values;
}

void validate_listed(const std::vector<double>& v) {
    if (v.front() < 0.0 || !std::isfinite(v.front())) {
        throw Error("invalid-frequency", "frequencies must be nonnegative and finite");
    }
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (!(v[i + 1] > v[i]) || !std::isfinite(v[i + 1])) {
            throw Error("invalid-frequency",
                        "entry " + std::to_string(i + 2) + " does not strictly increase");
        }
    }
}

// Geometrically spaced checkpoint prefix lengths in [n0, N], deduplicated.
std::vector<std::int64_t> checkpoints(std::int64_t n0, std::int64_t N, int count) {
    std::vector<std::int64_t> out;
    if (N < n0) n0 = N;
    const double a = std::log(static_cast<double>(n0));
    const double b = std::log(static_cast<double>(N));
    for (int k = 0; k < count; ++k) {
        const double t = count == 1 ? 1.0 : static_cast<double>(k) / (count - 1);
        auto n = static_cast<std::int64_t>(std::llround(std::exp(a + (b - a) * t)));
        n = std::clamp<std::int64_t>(n, n0, N);
        if (out.empty() || n > out.back()) out.push_back(n);
    }
    if (out.empty() || out.back() != N) out.push_back(N);
    return out;
}

struct GapScan {
    double log_inf = std::numeric_limits<double>::infinity();
    std::int64_t arg = 0;
    std::vector<TrendPoint> trend;
    bool clamped = false;
};

// weight_log(n, lambda_n) returns the additive log-space weight.
template <class WeightLog>
GapScan scan_gap_statistic(const Frequency& f, std::int64_t N, WeightLog&& weight_log) {
    GapScan scan;
    const auto marks = checkpoints(4, N, 25);
    std::size_t mark = 0;
    double prev = f.entry(1);
    for (std::int64_t n = 1; n < N; ++n) {
        const double next = f.entry(n + 1);
        const double gap = next - prev;
        if (!(gap > 0.0)) {
            throw Error("invalid-frequency",
                        "gap at index " + std::to_string(n) + " is not positive");
        }
        double w = weight_log(f.entry(n));
        if (w > 1e300) {
            w = 1e300;
            scan.clamped = true;
        }
        const double stat = std::log(gap) + w;
        if (stat < scan.log_inf) {
            scan.log_inf = stat;
            scan.arg = n;
        }
        prev = next;
        while (mark < marks.size() && n + 1 >= marks[mark]) {
            scan.trend.push_back({marks[mark], scan.log_inf});
            ++mark;
        }
    }
    if (scan.trend.empty()) scan.trend.push_back({N, scan.log_inf});
    return scan;
}

// Trend rule shared by both gap conditions (documented in the header).
Verdict gap_verdict(const std::vector<TrendPoint>& trend) {
    const double s_last = trend.back().value;
    const double s_mid = trend[trend.size() / 2].value;
    if (s_last >= s_mid - 0.01) return Verdict::evidence_holds;
    if (s_last <= s_mid - 0.25) return Verdict::evidence_fails;
    return Verdict::inconclusive;
}

ConditionReport finish_gap_report(ConditionReport rep, const GapScan& scan, std::int64_t N) {
    rep.N = N;
    rep.log_witness = scan.log_inf;
    rep.witness = std::exp(scan.log_inf);  // may underflow to 0; log_witness is authoritative
    rep.witness_index = scan.arg;
    rep.trend = scan.trend;
    rep.verdict = gap_verdict(rep.trend);
    if (scan.clamped) {
        rep.notes.push_back("weight exponent clamped at 1e300 for large entries");
    }
    rep.notes.push_back("finite-prefix evidence only; verdict from the documented trend rule");
    return rep;
}

}  // namespace

Frequency Frequency::parse(const std::string& spec) {
    const std::string s = strip(spec);
    Frequency f;
    if (s == "log(n)") {
        f.kind_ = Kind::log_n;
    } else if (s == "n") {
        f.kind_ = Kind::integer_n;
    } else if (s == "sqrt(log(n))") {
        f.kind_ = Kind::sqrt_log_n;
    } else if (s == "log(log(n))") {
        f.kind_ = Kind::log_log_n;
    } else if (s.rfind("file:", 0) == 0) {
        return from_values(load_values_file(s.substr(5)), s);
    } else {
        throw Error("freq-unknown-rule",
                    "unrecognized frequency spec '" + spec +
                        "' (expected log(n), n, sqrt(log(n)), log(log(n)) or file:<path>)");
    }
    f.label_ = s;
    return f;
}

Frequency Frequency::from_values(std::vector<double> values, std::string label) {
    if (values.empty()) {
        throw Error("freq-empty", "frequency list is empty");
    }
    validate_listed(values);
    Frequency f;
    f.kind_ = Kind::listed;
    f.label_ = std::move(label);
    f.values_ = std::move(values);
    return f;
}

double Frequency::entry(std::int64_t n) const {
    if (n < 1) {
        throw Error("freq-bad-index", "frequency index must be >= 1");
    }
    if (kind_ == Kind::listed) {
        if (n > static_cast<std::int64_t>(values_.size())) {
            throw Error("freq-index-out-of-range",
                        "index " + std::to_string(n) + " exceeds listed frequency length " +
                            std::to_string(values_.size()));
        }
        return values_[static_cast<std::size_t>(n - 1)];
    }
    return rule_value(kind_, n);
}

std::vector<double> Frequency::prefix(std::int64_t count) const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t n = 1; n <= count; ++n) out.push_back(entry(n));
    return out;
}

std::int64_t Frequency::max_index() const {
    if (kind_ == Kind::listed) return static_cast<std::int64_t>(values_.size());
    return std::numeric_limits<std::int64_t>::max();
}

ConditionReport check_bohr_gap(const Frequency& f, double l, double delta, std::int64_t N) {
    if (!(l > 0.0) || !(delta > 0.0) || N < 2) {
        throw Error("invalid-parameter", "need l > 0, delta > 0, N >= 2");
    }
    const GapScan scan =
        scan_gap_statistic(f, N, [&](double lambda) { return (l + delta) * lambda; });
    ConditionReport rep;
    rep.condition = "BC";
    rep.l = l;
    rep.delta = delta;
    return finish_gap_report(std::move(rep), scan, N);
}

ConditionReport check_landau_gap(const Frequency& f, double delta, std::int64_t N) {
    if (!(delta > 0.0) || N < 2) {
        throw Error("invalid-parameter", "need delta > 0, N >= 2");
    }
    const GapScan scan = scan_gap_statistic(f, N, [&](double lambda) {
        const double e = delta * lambda;
        return e > 690.0 ? 1e301 : std::exp(e);  // exp would overflow past ~709
    });
    ConditionReport rep;
    rep.condition = "LC";
    rep.delta = delta;
    return finish_gap_report(std::move(rep), scan, N);
}

ConditionReport l_value(const Frequency& f, std::int64_t N) {
    if (N < 4) {
        throw Error("invalid-parameter", "need N >= 4 for an L-value trend");
    }
    ConditionReport rep;
    rep.condition = "L";
    rep.N = N;

    bool skipped_zero = false;
    const auto tail_starts = checkpoints(2, std::max<std::int64_t>(2, N / 2), 16);

    // Single backward pass: suffix sups of r_n = log(n)/lambda_n at each tail start.
    std::vector<double> lambda = f.prefix(N);
    auto ratio = [&](std::int64_t n) -> double {
        const double lam = lambda[static_cast<std::size_t>(n - 1)];
        if (lam <= 0.0) return -1.0;  // sentinel: skip
        return std::log(static_cast<double>(n)) / lam;
    };

    double running = -std::numeric_limits<double>::infinity();
    std::int64_t running_arg = 0;
    std::size_t mark = tail_starts.size();
    std::vector<TrendPoint> rev_trend;
    double w_last = -1.0;           // sup over (N/2, N]
    std::int64_t w_last_arg = 0;
    const std::int64_t half = N / 2;
    const std::int64_t early_hi =
        std::max<std::int64_t>(8, static_cast<std::int64_t>(std::sqrt(static_cast<double>(N))));
    double w_first = -1.0;          // sup over [2, early_hi]

    for (std::int64_t n = N; n >= 2; --n) {
        const double r = ratio(n);
        if (r < 0.0) {
            skipped_zero = true;
        } else {
            if (r > running) {
                running = r;
                running_arg = n;
            }
            if (n > half && r > w_last) {
                w_last = r;
                w_last_arg = n;
            }
            if (n <= early_hi && r > w_first) w_first = r;
        }
        while (mark > 0 && n <= tail_starts[mark - 1]) {
            rev_trend.push_back({tail_starts[mark - 1], running});
            --mark;
        }
    }
    if (ratio(1) < 0.0 || lambda[0] <= 0.0) skipped_zero = true;
    std::reverse(rev_trend.begin(), rev_trend.end());
    rep.trend = std::move(rev_trend);

    if (w_last < 0.0 || w_first < 0.0) {
        throw Error("invalid-frequency", "not enough positive entries for an L-value estimate");
    }
    rep.witness = w_last;
    rep.witness_index = w_last_arg;
    rep.log_witness = std::log(w_last);
    if (w_last > 1.10 * w_first) {
        rep.diverging = true;
        rep.verdict = Verdict::evidence_fails;  // against "L finite"
        rep.notes.push_back("tail sups still growing: estimate is a lower bound, trend diverging");
    } else if (w_last <= 1.03 * w_first) {
        rep.verdict = Verdict::evidence_holds;
        rep.notes.push_back("tail sups stabilized; estimate taken over the trailing half window");
    } else {
        rep.verdict = Verdict::inconclusive;
    }
    if (skipped_zero) {
        rep.notes.push_back("entries with lambda_n = 0 skipped in the ratio (log n)/lambda_n");
    }
    (void)running_arg;
    return rep;
}

}  // namespace dlab
