#include "dlab/basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>

namespace dlab {

namespace {

long long checked_mul(long long a, long long b, const char* what) {
    const __int128 p = static_cast<__int128>(a) * static_cast<__int128>(b);
    if (p > std::numeric_limits<long long>::max() || p < std::numeric_limits<long long>::min()) {
        throw Error("basis-overflow", std::string("64-bit overflow while ") + what);
    }
    return static_cast<long long>(p);
}

long long lcm_ll(long long a, long long b) {
    const long long g = std::gcd(a, b);
    return checked_mul(a / g, b, "accumulating the denominator lcm");
}

// Exact solve of sum_j q_j * cols[j] = target over the rationals.
// cols are Q-independent by invariant, so the solution is unique when it
// exists; returns nullopt when target is outside the span.
std::optional<std::vector<Rational>> solve_rational(
    const std::vector<std::vector<Rational>>& cols, const std::vector<Rational>& target) {
    const std::size_t P = cols.size();
    const std::size_t S = target.size();
    if (P == 0) {
        for (const auto& t : target) {
            if (t != Rational(0)) return std::nullopt;
        }
        return std::vector<Rational>{};
    }
    // Augmented matrix M (S x (P+1)), columns = basis vectors | target.
    std::vector<std::vector<Rational>> M(S, std::vector<Rational>(P + 1, Rational(0)));
    for (std::size_t s = 0; s < S; ++s) {
        for (std::size_t j = 0; j < P; ++j) M[s][j] = cols[j][s];
        M[s][P] = target[s];
    }
    std::vector<std::size_t> pivot_row(P);
    std::size_t rank = 0;
    for (std::size_t j = 0; j < P; ++j) {
        std::size_t pr = S;
        for (std::size_t r = rank; r < S; ++r) {
            if (M[r][j] != Rational(0)) {
                pr = r;
                break;
            }
        }
        if (pr == S) {
            // Columns were supposed to be independent; a pivotless column
            // contradicts the induction invariant.
            throw Error("basis-internal", "basis coordinate columns are not independent");
        }
        std::swap(M[rank], M[pr]);
        const Rational inv = Rational(1) / M[rank][j];
        for (std::size_t c = j; c <= P; ++c) M[rank][c] *= inv;
        for (std::size_t r = 0; r < S; ++r) {
            if (r == rank || M[r][j] == Rational(0)) continue;
            const Rational factor = M[r][j];
            for (std::size_t c = j; c <= P; ++c) M[r][c] -= factor * M[rank][c];
        }
        pivot_row[j] = rank;
        ++rank;
    }
    for (std::size_t r = rank; r < S; ++r) {
        if (M[r][P] != Rational(0)) return std::nullopt;  // inconsistent: independent value
    }
    std::vector<Rational> q(P);
    for (std::size_t j = 0; j < P; ++j) q[j] = M[pivot_row[j]][P];
    return q;
}

// Shared induction state for both modes. Rescales rows by K and appends the
// integer row for a dependent value q (rationals over the current basis).
struct InductionState {
    std::vector<std::vector<long long>> rows;

    void absorb_dependent(const std::vector<Rational>& q,
                          const std::function<void(long long)>& shrink_basis) {
        long long K = 1;
        for (const auto& qj : q) K = lcm_ll(K, qj.denominator());
        if (K > 1) {
            for (auto& row : rows) {
                for (auto& e : row) e = checked_mul(e, K, "rescaling previous rows");
            }
            shrink_basis(K);
        }
        std::vector<long long> row(q.size());
        for (std::size_t j = 0; j < q.size(); ++j) {
            row[j] = checked_mul(q[j].numerator(), K / q[j].denominator(), "forming a new row");
        }
        rows.push_back(std::move(row));
    }

    void append_independent() {
        for (auto& row : rows) row.push_back(0);
        std::vector<long long> row(rows.empty() ? 1 : rows.front().size(), 0);
        row.back() = 1;
        rows.push_back(std::move(row));
    }
};

}  // namespace

double BasisDecomposition::reconstruct(std::size_t n) const {
    if (n >= rows.size()) {
        throw Error("basis-bad-index", "row index out of range");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        acc += static_cast<double>(rows[n][j]) * basis[j];
    }
    return acc;
}

BasisDecomposition decompose_basis(const SymbolicInput& input) {
    const std::size_t S = input.symbols.size();
    if (input.symbol_values.size() != S) {
        throw Error("invalid-relations", "symbols and symbol_values disagree in length");
    }
    for (const auto& coords : input.value_coords) {
        if (coords.size() != S) {
            throw Error("invalid-relations", "every coordinate vector must have one entry per symbol");
        }
    }

    BasisDecomposition out;
    out.exact = true;
    out.symbols = input.symbols;
    out.symbol_values = input.symbol_values;

    InductionState st;
    auto shrink = [&](long long K) {
        for (auto& bc : out.basis_coords) {
            for (auto& c : bc) c /= K;
        }
    };
    for (const auto& coords : input.value_coords) {
        auto q = solve_rational(out.basis_coords, coords);
        if (q) {
            st.absorb_dependent(*q, shrink);
        } else {
            out.basis_coords.push_back(coords);
            st.append_independent();
        }
    }
    out.rows = std::move(st.rows);
    // Pad earlier rows (append_independent already keeps them aligned, but a
    // trailing run of dependents can leave rows shorter than the basis).
    for (auto& row : out.rows) row.resize(out.basis_coords.size(), 0);
    out.basis.reserve(out.basis_coords.size());
    for (const auto& bc : out.basis_coords) {
        double v = 0.0;
        for (std::size_t s = 0; s < S; ++s) {
            v += boost::rational_cast<double>(bc[s]) * input.symbol_values[s];
        }
        out.basis.push_back(v);
    }
    out.notes.push_back("symbolic-exact: rows certified relative to the declared generators");
    return out;
}

// ---------------------------------------------------------------------------
// Numeric mode: integer-relation search via floating-point LLL.
// ---------------------------------------------------------------------------

namespace {

// All floating state is kept in extended precision: the interesting lattices
// weigh one column by a large scale factor, and the extra mantissa digits
// decide whether short relation vectors survive the cancellation in
// Gram-Schmidt at scales around 1e12 and beyond.
void lll_core(std::vector<std::vector<long double>>& Bl, std::vector<std::vector<long long>>& Z,
              double delta) {
    const std::size_t n = Bl.size();
    if (n < 2) return;
    const std::size_t dim = Bl[0].size();

    std::vector<std::vector<long double>> gs(n, std::vector<long double>(dim));
    std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0.0L));
    std::vector<long double> norm2(n, 0.0L);

    auto dot = [&](const std::vector<long double>& a, const std::vector<long double>& b) {
        long double s = 0.0L;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    auto gram_schmidt = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            gs[i] = Bl[i];
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = norm2[j] > 0.0L ? dot(Bl[i], gs[j]) / norm2[j] : 0.0L;
                for (std::size_t d = 0; d < dim; ++d) gs[i][d] -= mu[i][j] * gs[j][d];
            }
            norm2[i] = dot(gs[i], gs[i]);
        }
    };

    gram_schmidt();
    std::size_t k = 1;
    std::size_t guard = 0;
    const std::size_t guard_max = 100000;
    while (k < n && ++guard < guard_max) {
        // Size reduction of b_k against b_j, j < k (integer operations mirrored
        // in Z).  Subtracting m*b_j shifts the projections of b_k onto every
        // earlier direction, so the mu row must be updated in place; applying
        // stale multipliers grows vectors instead of shrinking them.  Steps
        // with absurd multipliers are skipped: they arise when a Gram-Schmidt
        // norm collapses below working precision, and applying them would
        // corrupt the integer mirror.
        for (std::size_t j = k; j-- > 0;) {
            const long double m = std::round(mu[k][j]);
            if (m != 0.0L && std::fabs(m) < 1e15L) {
                const long long mi = static_cast<long long>(m);
                for (std::size_t d = 0; d < dim; ++d) Bl[k][d] -= m * Bl[j][d];
                for (std::size_t d = 0; d < Z[k].size(); ++d) Z[k][d] -= mi * Z[j][d];
                mu[k][j] -= m;
                for (std::size_t i = 0; i < j; ++i) mu[k][i] -= m * mu[j][i];
            }
        }
        gram_schmidt();
        // Lovasz condition.
        if (norm2[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1]) {
            ++k;
        } else {
            std::swap(Bl[k], Bl[k - 1]);
            std::swap(Z[k], Z[k - 1]);
            gram_schmidt();
            k = (k > 1) ? k - 1 : 1;
        }
    }
}

}  // namespace

void lll_reduce(std::vector<std::vector<double>>& B, std::vector<std::vector<long long>>& Z,
                double delta) {
    const std::size_t n = B.size();
    if (n < 2) return;
    const std::size_t dim = B[0].size();
    std::vector<std::vector<long double>> Bl(n, std::vector<long double>(dim));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < dim; ++d) Bl[i][d] = static_cast<long double>(B[i][d]);
    lll_core(Bl, Z, delta);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < dim; ++d) B[i][d] = static_cast<double>(Bl[i][d]);
}

namespace {

struct LatticeCandidate {
    std::vector<long long> m;
    double resid = std::numeric_limits<double>::infinity();
};

// Residual level below which a combination sum m_j * x_j is exact to working
// precision: anything under this is rounding noise, not a near-miss.  Each
// input value carries at most half an ulp of rounding, so a true relation
// evaluates to at most (eps/2) * sum |m_j x_j| plus negligible long-double
// summation error.  The factor 4 is an 8x cushion on that worst case; it must
// stay well below the level where small-coefficient combinations of generic
// values land near zero by pure counting (measured around 1e-12 for a dozen
// logarithms with single-digit coefficients), or such coincidences would be
// accepted as relations no matter how tight tau is.
double fp_noise_bound(const std::vector<long long>& m, const std::vector<double>& x) {
    double mass = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        mass += std::fabs(static_cast<double>(m[j])) * std::fabs(x[j]);
    }
    return 4.0 * std::numeric_limits<double>::epsilon() * mass;
}

// Coefficient budget for trusted relations. Combinations of generic reals
// with coefficients beyond this land freakishly close to zero purely by
// counting (smooth-number coincidences for logarithms, pigeonhole in
// general), and double precision cannot tell those from structure, so the
// search refuses to consider them. Eight covers every factorization exponent
// up to values of 2^8 and the usual small rescaling denominators.
//
// The weighted mass sum |m_j| * |x_j| is capped as well: a genuine relation
// certifies one value as a combination of the others with single-digit
// numerators and denominators, so after clearing denominators its mass stays
// within 2 * budget * max |x_j|.  Fatter combinations carry more mutually
// cancelling bulk than the structure they claim to express; with a dozen or
// more values such coincidences reach residuals below the rounding floor of
// honest relations, where no residual test can tell them apart.
bool plausible_coefficients(const std::vector<long long>& m, const std::vector<double>& x) {
    double mass = 0.0;
    double biggest = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (std::llabs(m[j]) > 8) return false;
        mass += std::fabs(static_cast<double>(m[j])) * std::fabs(x[j]);
        biggest = std::max(biggest, std::fabs(x[j]));
    }
    return mass <= 16.0 * biggest;
}

struct LatticeScan {
    LatticeCandidate accepted;  // simplest candidate passing the acceptance gate
    LatticeCandidate near_miss;  // simplest plausible candidate with resid <= 10*tau
    long double accept_key = std::numeric_limits<long double>::infinity();
    long double near_key = std::numeric_limits<long double>::infinity();
};

// One reduction round over the lattice rows (e_i | scale * x_i), merged into
// the accumulator. Among the reduced rows and all sums/differences of row
// pairs (the reduction is approximate; a short relation can hide just outside
// the rows), keep the structurally simplest candidate -- smallest coefficient
// norm, ties broken by residual -- that qualifies as a relation (plausible
// coefficients and residual within tau or within the rounding floor of its
// own combination), and separately the simplest plausible near-miss within
// 10*tau, used by the ambiguity probe. Selecting by coefficient norm rather
// than raw residual keeps long rows with coincidentally tiny residuals from
// masking the true relation, and is scale-free so scans at different scales
// merge cleanly. Residuals are recomputed from the integer rows in long
// double, so they carry no slop from the reduction.
void scan_lattice(const std::vector<double>& x, double scale, double tau, LatticeScan& out) {
    const std::size_t nvec = x.size();
    std::vector<std::vector<long double>> Bf(nvec, std::vector<long double>(nvec + 1, 0.0L));
    std::vector<std::vector<long long>> Zi(nvec, std::vector<long long>(nvec, 0));
    for (std::size_t i = 0; i < nvec; ++i) {
        Bf[i][i] = 1.0L;
        Bf[i][nvec] = static_cast<long double>(scale) * static_cast<long double>(x[i]);
        Zi[i][i] = 1;
    }
    lll_core(Bf, Zi, 0.99);

    const auto consider = [&](const std::vector<long long>& m) {
        long double resid = 0.0L;
        long double coeff2 = 0.0L;
        bool nonzero = false;
        for (std::size_t j = 0; j < nvec; ++j) {
            const long double mj = static_cast<long double>(m[j]);
            resid += mj * static_cast<long double>(x[j]);
            coeff2 += mj * mj;
            nonzero = nonzero || m[j] != 0;
        }
        if (!nonzero || !plausible_coefficients(m, x)) return;
        const double r = std::fabs(static_cast<double>(resid));
        if ((r <= tau || r <= fp_noise_bound(m, x)) &&
            (coeff2 < out.accept_key || (coeff2 == out.accept_key && r < out.accepted.resid))) {
            out.accept_key = coeff2;
            out.accepted.resid = r;
            out.accepted.m = m;
        }
        if (r <= 10.0 * tau &&
            (coeff2 < out.near_key || (coeff2 == out.near_key && r < out.near_miss.resid))) {
            out.near_key = coeff2;
            out.near_miss.resid = r;
            out.near_miss.m = m;
        }
    };
    for (std::size_t i = 0; i < nvec; ++i) consider(Zi[i]);
    std::vector<long long> combo(nvec);
    for (std::size_t i = 0; i + 1 < nvec; ++i) {
        for (std::size_t j = i + 1; j < nvec; ++j) {
            for (int sgn : {1, -1}) {
                for (std::size_t d = 0; d < nvec; ++d) combo[d] = Zi[i][d] + sgn * Zi[j][d];
                consider(combo);
            }
        }
    }
}

bool same_relation(const std::vector<long long>& a, const std::vector<long long>& b) {
    if (a.size() != b.size()) return false;
    bool plus = true;
    bool minus = true;
    for (std::size_t j = 0; j < a.size(); ++j) {
        plus = plus && a[j] == b[j];
        minus = minus && a[j] == -b[j];
    }
    return plus || minus;
}

std::string short_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace

BasisDecomposition decompose_basis_numeric(const std::vector<double>& values, double tau) {
    if (!(tau > 0.0)) {
        throw Error("invalid-parameter", "numeric mode needs a tolerance tau > 0");
    }
    BasisDecomposition out;
    out.exact = false;

    InductionState st;
    auto shrink = [&](long long K) {
        for (auto& b : out.basis) b /= static_cast<double>(K);
    };

    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        const double v = values[idx];
        if (!std::isfinite(v) || v < -tau) {
            throw Error("invalid-parameter",
                        "value " + std::to_string(idx + 1) + " is not a nonnegative real");
        }
        const std::size_t P = out.basis.size();
        if (std::fabs(v) <= tau) {
            // Zero value: empty rational combination.
            st.absorb_dependent(std::vector<Rational>(P, Rational(0)), shrink);
            continue;
        }
        if (P == 0) {
            out.basis.push_back(v);
            st.append_independent();
            continue;
        }

        // Classical integer-relation lattice: rows (e_i | C * x_i) with
        // x = (b_1, ..., b_P, v) and C = 1/tau. A relation m with
        // |<m, x>| <= tau shows up as a short reduced vector. The reduction
        // at scale 1/tau is aggressive enough that on independent inputs it
        // manufactures near-miss candidates hovering just above tau, so a
        // near-miss only blocks the verdict if it survives a second
        // reduction at a much harsher scale: genuine near-relations are
        // scale-stable, reduction artifacts are not.
        std::vector<double> x(out.basis);
        x.push_back(v);
        // The first pass pools reductions at several scales, each capped at
        // 1/tau.  Mild scales favour relations whose coefficient vectors are
        // short; harsh scales are needed before denser relations (a sixth
        // power over a dozen-value basis, say) become short enough relative
        // to the reduction's own artifact vectors to surface at all.  Capping
        // at 1/tau keeps artifact residuals -- which shrink like a root of
        // the scale over the scale -- safely above tau, so an artifact can
        // never pass the acceptance gate.
        LatticeScan first;
        double prev = 0.0;
        for (const double s : {1e6, 1e10, 1e13}) {
            const double capped = std::min(s, 1.0 / tau);
            if (capped == prev) continue;
            prev = capped;
            scan_lattice(x, capped, tau, first);
        }

        std::vector<long long> accepted = first.accepted.m;
        bool ambiguous = false;
        if (accepted.empty() && !first.near_miss.m.empty()) {
            // The probe pass is only consulted for stability, never for
            // acceptance: at harsher scales the reduction's own near-misses
            // sink below tau and would read as relations.  A genuine
            // near-relation keeps the same coefficient vector under a harsher
            // reduction; artifacts relocate.
            LatticeScan second;
            scan_lattice(x, std::min(1e3 / tau, 1e14), tau, second);
            if (!second.near_miss.m.empty() &&
                same_relation(first.near_miss.m, second.near_miss.m)) {
                ambiguous = true;
            }
            // Otherwise: a reduction artifact, so the value is independent.
        }

        if (ambiguous) {
            throw Error("relation-inconclusive",
                        "relation search ambiguous at value index " + std::to_string(idx + 1) +
                            " (best residual " + short_double(first.near_miss.resid) +
                            ", tau " + short_double(tau) + ")");
        }
        if (!accepted.empty()) {
            const long long m_last = accepted.back();
            if (m_last == 0) {
                throw Error("relation-degenerate",
                            "relation among existing basis values at index " +
                                std::to_string(idx + 1) + "; tau is too loose");
            }
            std::vector<Rational> q(P);
            for (std::size_t j = 0; j < P; ++j) q[j] = Rational(-accepted[j], m_last);
            st.absorb_dependent(q, shrink);
        } else {
            out.basis.push_back(v);
            st.append_independent();
        }
    }
    out.rows = std::move(st.rows);
    for (auto& row : out.rows) row.resize(out.basis.size(), 0);
    out.notes.push_back(
        "numeric mode: independence decided by a lattice-reduction heuristic at tolerance tau; "
        "not rigorous");
    return out;
}

}  // namespace dlab
