#include "dlab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace dlab {

namespace {

// g = a s + b t with g = gcd(|a|, |b|) >= 0.
long long ext_gcd(long long a, long long b, long long& s, long long& t) {
    if (b == 0) {
        s = a >= 0 ? 1 : -1;
        t = 0;
        return std::llabs(a);
    }
    long long s1 = 0;
    long long t1 = 0;
    const long long g = ext_gcd(b, a % b, s1, t1);
    s = t1;
    t = s1 - (a / b) * t1;
    return g;
}

long long gcd_ll(long long a, long long b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b != 0) {
        const long long r = a % b;
        a = b;
        b = r;
    }
    return a;
}

long long checked_ll(__int128 v, const char* what) {
    if (v > static_cast<__int128>(9223372036854775807LL) ||
        v < -static_cast<__int128>(9223372036854775807LL) - 1) {
        throw Error("invalid-parameter", std::string(what) + " overflows 64-bit integers");
    }
    return static_cast<long long>(v);
}

// Exact integer inverse by rational Gauss-Jordan; valid whenever det = ±1.
std::vector<std::vector<long long>> invert_unimodular(
    const std::vector<std::vector<long long>>& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = Rational(a[i][j]);
        aug[i][n + i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && aug[pivot][col] == Rational(0)) ++pivot;
        if (pivot == n) {
            throw Error("internal-inverse", "singular matrix in unimodular inversion");
        }
        std::swap(aug[col], aug[pivot]);
        const Rational inv = Rational(1) / aug[col][col];
        for (auto& v : aug[col]) v *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || aug[row][col] == Rational(0)) continue;
            const Rational factor = aug[row][col];
            for (std::size_t j = 0; j < 2 * n; ++j) aug[row][j] -= factor * aug[col][j];
        }
    }
    std::vector<std::vector<long long>> inv(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& r = aug[i][n + j];
            if (r.denominator() != 1) {
                throw Error("internal-inverse", "non-integer inverse entry");
            }
            inv[i][j] = r.numerator();
        }
    }
    return inv;
}

}  // namespace

long long det_exact(const std::vector<std::vector<long long>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    for (const auto& row : m) {
        if (row.size() != n) throw Error("invalid-parameter", "determinant needs a square matrix");
    }
    // Bareiss fraction-free elimination; every division below is exact.
    std::vector<std::vector<__int128>> w(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i][j] = m[i][j];
    int sign = 1;
    __int128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && w[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(w[k], w[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) / prev;
            }
            w[i][k] = 0;
        }
        prev = w[k][k];
    }
    return checked_ll(sign * w[n - 1][n - 1], "determinant");
}

UnimodularPlan unimodular_plan(const std::vector<long long>& q, long long Q) {
    if (q.size() < 2) {
        throw Error("invalid-parameter", "direction needs at least two coordinates");
    }
    if (Q <= 0) {
        throw Error("invalid-parameter", "denominator Q must be positive");
    }
    long long s = 0;
    long long t = 0;
    if (ext_gcd(q[0], q[1], s, t) != 1) {
        throw Error("not-coprime", "leading pair of the direction is not coprime");
    }
    // q1 r2 - q2 r1 = 1 from q1 s + q2 t = 1 via (r2, r1) = (s, -t); shift by
    // multiples of (q1, q2) to land r1 in [0, |q1|).
    long long r2 = s;
    long long r1 = -t;
    if (q[0] != 0) {
        const long long m = std::llabs(q[0]);
        const long long rm = ((r1 % m) + m) % m;
        const long long k = (rm - r1) / q[0];
        r1 = rm;
        r2 = checked_ll(static_cast<__int128>(r2) + static_cast<__int128>(k) * q[1],
                        "Bezout row");
    }

    const std::size_t n = q.size();
    UnimodularPlan plan;
    plan.q = q;
    plan.Q = Q;
    plan.A.assign(n, std::vector<long long>(n, 0));
    plan.A[0] = q;
    plan.A[1][0] = r1;
    plan.A[1][1] = r2;
    for (std::size_t i = 2; i < n; ++i) plan.A[i][i] = 1;
    plan.Ainv = invert_unimodular(plan.A);

    // paranoia: confirm A * Ainv = I in exact arithmetic
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            __int128 acc = 0;
            for (std::size_t l = 0; l < n; ++l) {
                acc += static_cast<__int128>(plan.A[i][l]) * plan.Ainv[l][j];
            }
            if (acc != (i == j ? 1 : 0)) {
                throw Error("internal-inverse", "inverse verification failed");
            }
        }
    }
    return plan;
}

namespace {

// Best rational approximation p/q, q <= q_max, by continued-fraction
// convergents.
std::pair<long long, long long> cf_approx(double x, long long q_max) {
    const bool neg = x < 0.0;
    double y = std::fabs(x);
    long long h_prev = 0, h = 1, k_prev = 1, k = 0;
    for (int iter = 0; iter < 64; ++iter) {
        const double fa = std::floor(y);
        if (fa > 9.0e17) break;
        const long long a = static_cast<long long>(fa);
        const __int128 h_next = static_cast<__int128>(a) * h + h_prev;
        const __int128 k_next = static_cast<__int128>(a) * k + k_prev;
        if (k_next > q_max || h_next > static_cast<__int128>(9.0e17)) break;
        h_prev = h;
        h = static_cast<long long>(h_next);
        k_prev = k;
        k = static_cast<long long>(k_next);
        const double rem = y - fa;
        if (rem < 1e-12) break;
        y = 1.0 / rem;
    }
    if (k == 0) return {0, 1};
    return {neg ? -h : h, k};
}

bool leading_pair_ok(const std::vector<long long>& q) {
    return q.size() >= 2 && gcd_ll(q[0], q[1]) == 1;
}

std::vector<long long> numerators_at(const std::vector<double>& x, long long Q) {
    std::vector<long long> q(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) q[j] = llround(x[j] * static_cast<double>(Q));
    return q;
}

}  // namespace

RationalDirection rationalize_direction(const std::vector<double>& x, long long q_max) {
    if (x.size() < 2) {
        throw Error("invalid-parameter", "direction needs at least two coordinates");
    }
    if (q_max < 1) {
        throw Error("invalid-parameter", "q_max must be positive");
    }
    const std::size_t n = x.size();

    long long Q = 1;
    for (double xi : x) {
        const auto [p, den] = cf_approx(xi, q_max);
        (void)p;
        const long long g = gcd_ll(Q, den);
        const __int128 l = static_cast<__int128>(Q) / g * den;
        Q = l > q_max ? q_max : static_cast<long long>(l);
        if (Q == q_max) break;
    }

    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0);

    for (long long dq = 0; dq <= 64; ++dq) {
        const long long qq = Q + dq;
        if (qq > q_max + 64) break;
        std::vector<long long> num = numerators_at(x, qq);
        // joint reduction keeps the direction, shrinks the integers
        long long g = qq;
        for (long long v : num) g = gcd_ll(g, v);
        if (g > 1) {
            for (auto& v : num) v /= g;
        }
        const long long qq_red = g > 1 ? qq / g : qq;

        if (leading_pair_ok(num)) {
            return RationalDirection{num, qq_red, identity};
        }
        // permute a coprime pair into the lead, preserving the rest in order
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || gcd_ll(num[i], num[j]) != 1) continue;
                std::vector<std::size_t> perm{i, j};
                for (std::size_t l = 0; l < n; ++l) {
                    if (l != i && l != j) perm.push_back(l);
                }
                std::vector<long long> pq(n);
                for (std::size_t l = 0; l < n; ++l) pq[l] = num[perm[l]];
                return RationalDirection{pq, qq_red, perm};
            }
        }
    }
    throw Error("not-coprime", "no coprime leading pair at any admissible denominator");
}

std::vector<long long> transpose_apply(const std::vector<std::vector<long long>>& m,
                                       const std::vector<long long>& alpha) {
    const std::size_t n = alpha.size();
    if (m.size() != n) {
        throw Error("invalid-parameter", "matrix/vector dimension mismatch");
    }
    std::vector<long long> out(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[j].size() != n) {
            throw Error("invalid-parameter", "substitution matrix must be square");
        }
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = checked_ll(static_cast<__int128>(out[i]) +
                                    static_cast<__int128>(m[j][i]) * alpha[j],
                                "substituted exponent");
        }
    }
    return out;
}

TorusPolynomial substituted_polynomial(const TorusPolynomial& f,
                                       const std::vector<std::vector<long long>>& m) {
    std::vector<std::vector<long long>> spec;
    spec.reserve(f.spectrum.size());
    for (const auto& alpha : f.spectrum) spec.push_back(transpose_apply(m, alpha));
    return TorusPolynomial(std::move(spec), f.coeffs);
}

namespace {

// Staged prefix structure of the maximal scan: term order sorted by the
// threshold key <alpha, x>, tie groups merged, and the group of keys <= 0
// included in every stage (the sup runs over S > 0 only).
struct CarlesonScan {
    std::vector<std::size_t> order;
    std::vector<std::size_t> stage_end;  // ascending; stage_end[0] ends the base group
};

CarlesonScan make_scan(const TorusPolynomial& f, const std::vector<double>& x) {
    if (!f.spectrum.empty() && f.dim() != x.size()) {
        throw Error("invalid-parameter", "direction dimension does not match the spectrum");
    }
    const std::size_t n = f.spectrum.size();
    std::vector<double> key(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            acc += static_cast<double>(f.spectrum[i][j]) * x[j];
        }
        key[i] = acc;
    }
    CarlesonScan scan;
    scan.order.resize(n);
    std::iota(scan.order.begin(), scan.order.end(), 0);
    std::sort(scan.order.begin(), scan.order.end(),
              [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });

    const double tie = 1e-9;
    std::size_t pos = 0;
    while (pos < n && key[scan.order[pos]] <= tie) ++pos;
    scan.stage_end.push_back(pos);  // base group: keys <= 0 (may be empty)
    while (pos < n) {
        const double k0 = key[scan.order[pos]];
        std::size_t end = pos + 1;
        while (end < n &&
               key[scan.order[end]] - k0 <= tie * (1.0 + std::fabs(k0))) {
            ++end;
        }
        scan.stage_end.push_back(end);
        pos = end;
    }
    return scan;
}

// sup over stages of |prefix sum|; also exposes the full sum (last prefix).
double scan_sup(const CarlesonScan& scan, const std::vector<cplx>& term_values, cplx* full) {
    cplx acc(0.0, 0.0);
    double best = 0.0;
    std::size_t pos = 0;
    for (std::size_t end : scan.stage_end) {
        for (; pos < end; ++pos) acc += term_values[scan.order[pos]];
        best = std::max(best, std::abs(acc));
    }
    if (full != nullptr) *full = acc;
    return best;
}

std::vector<cplx> term_values_at(const std::vector<std::vector<long long>>& spectrum,
                                 const std::vector<cplx>& coeffs,
                                 const std::vector<double>& theta) {
    std::vector<cplx> values(spectrum.size());
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        double phase = 0.0;
        for (std::size_t j = 0; j < theta.size(); ++j) {
            phase += static_cast<double>(spectrum[k][j]) * theta[j];
        }
        values[k] = coeffs[k] * unit_phase(phase);
    }
    return values;
}

}  // namespace

double carleson_maximal(const TorusPolynomial& f, const std::vector<double>& x,
                        const std::vector<double>& theta) {
    if (!f.spectrum.empty() && theta.size() != f.dim()) {
        throw Error("model-mismatch", "evaluation point dimension does not match the spectrum");
    }
    const CarlesonScan scan = make_scan(f, x);
    return scan_sup(scan, term_values_at(f.spectrum, f.coeffs, theta), nullptr);
}

MaximalEstimate carleson_norm_mc(const TorusPolynomial& f, const std::vector<double>& x,
                                 double p, std::size_t samples, std::uint64_t seed,
                                 const std::vector<std::vector<long long>>* substitution,
                                 Exec exec) {
    if (!(p > 0.0)) {
        throw Error("invalid-exponent", "Monte Carlo norm needs p > 0");
    }
    if (samples == 0) {
        throw Error("invalid-parameter", "sample count must be positive");
    }
    const CarlesonScan scan = make_scan(f, x);
    std::vector<std::vector<long long>> eval_spectrum = f.spectrum;
    if (substitution != nullptr) {
        for (auto& alpha : eval_spectrum) alpha = transpose_apply(*substitution, alpha);
    }
    const std::size_t dim = f.dim();

    std::vector<double> buf(samples, 0.0);
    parallel_fill(samples, exec, [&](std::size_t i) {
        auto rng = task_rng(seed, kStreamCarleson, i);
        std::vector<double> theta(dim);
        for (auto& a : theta) a = rng.next_angle();
        const double m = scan_sup(scan, term_values_at(eval_spectrum, f.coeffs, theta), nullptr);
        buf[i] = std::pow(m, p);
    });

    double mean = 0.0;
    for (double v : buf) mean += v;
    mean /= static_cast<double>(samples);
    double var = 0.0;
    for (double v : buf) var += sqr(v - mean);
    var /= samples > 1 ? static_cast<double>(samples - 1) : 1.0;
    const double se_mean = std::sqrt(var / static_cast<double>(samples));

    MaximalEstimate out;
    out.operator_tag = substitution != nullptr ? "carleson-substituted" : "carleson";
    out.p = p;
    out.samples = samples;
    out.seed = seed;
    out.estimate = std::pow(mean, 1.0 / p);
    out.std_error = mean > 0.0 ? se_mean * std::pow(mean, 1.0 / p - 1.0) / p : 0.0;
    return out;
}

double carleson_min_margin(const TorusPolynomial& f, const std::vector<double>& x,
                           std::size_t samples, std::uint64_t seed, Exec exec) {
    if (samples == 0) {
        throw Error("invalid-parameter", "sample count must be positive");
    }
    const CarlesonScan scan = make_scan(f, x);
    const std::size_t dim = f.dim();
    std::vector<double> buf(samples, 0.0);
    parallel_fill(samples, exec, [&](std::size_t i) {
        auto rng = task_rng(seed, kStreamCarleson, i);
        std::vector<double> theta(dim);
        for (auto& a : theta) a = rng.next_angle();
        cplx full(0.0, 0.0);
        const double m = scan_sup(scan, term_values_at(f.spectrum, f.coeffs, theta), &full);
        buf[i] = m - std::abs(full);
    });
    return *std::min_element(buf.begin(), buf.end());
}

namespace {

// 0-based model row of each polynomial term; the model must cover the
// polynomial's index range (dense-prefix convention shared with
// vertical_limit).
std::vector<std::size_t> model_rows_for(const DirichletPolynomial& d, const GroupModel& model) {
    std::vector<std::size_t> rows(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        const std::size_t r = d.indices[k] - 1;
        if (r >= model.size()) {
            throw Error("model-mismatch", "model does not cover polynomial index " +
                                              std::to_string(d.indices[k]));
        }
        rows[k] = r;
    }
    return rows;
}

}  // namespace

double smax_u(const DirichletPolynomial& d, const GroupModel& model, double u,
              const std::vector<double>& omega) {
    if (!(u > 0.0)) {
        throw Error("invalid-parameter", "damping u must be positive");
    }
    const auto rows = model_rows_for(d, model);
    cplx acc(0.0, 0.0);
    double best = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        acc += d.coeffs[k] * std::exp(-u * d.lambda(k)) * model.character(rows[k], omega);
        best = std::max(best, std::abs(acc));
    }
    return best;
}

double tmax_weighted(const DirichletPolynomial& d, const GroupModel& model,
                     const std::vector<double>& weights, const std::vector<double>& omega) {
    if (weights.size() != d.size()) {
        throw Error("invalid-parameter", "one weight per polynomial term required");
    }
    for (double w : weights) {
        if (!(w > 0.0) || w > 1.0) {
            throw Error("invalid-parameter", "weights must lie in (0, 1]");
        }
    }
    const auto rows = model_rows_for(d, model);
    cplx acc(0.0, 0.0);
    double best = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        acc += d.coeffs[k] * model.character(rows[k], omega);
        const double lam_n = d.lambda(k);
        const double lam_next = d.freq.entry(d.indices[k] + 1);
        if (!(lam_next > 0.0)) {
            throw Error("invalid-frequency", "successor frequency must be positive");
        }
        const double gap_ratio = (lam_next - lam_n) / lam_next;
        best = std::max(best, std::abs(acc) * weights[k] * std::pow(gap_ratio, weights[k]));
    }
    return best;
}

double hl_flow(const DirichletPolynomial& d, const GroupModel& model,
               const std::vector<double>& omega, const HlFlowOptions& opt) {
    if (!(opt.step > 0.0) || !(opt.t_max > 0.0) || opt.levels < 0) {
        throw Error("invalid-parameter", "hl_flow needs step > 0, t_max > 0, levels >= 0");
    }
    const auto rows = model_rows_for(d, model);
    std::vector<cplx> twisted(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        twisted[k] = d.coeffs[k] * model.character(rows[k], omega);
    }
    const auto n_half = static_cast<std::size_t>(std::ceil(opt.t_max / opt.step));
    const std::size_t n = 2 * n_half + 1;  // grid contains t = 0 exactly
    std::vector<double> mod(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (static_cast<double>(i) - static_cast<double>(n_half)) * opt.step;
        cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < d.size(); ++k) {
            acc += twisted[k] * unit_phase(-d.lambda(k) * t);
        }
        mod[i] = std::abs(acc);
    }
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + mod[i];

    double best = 0.0;
    for (int j = 0; j <= opt.levels; ++j) {
        const std::size_t half = j == 0 ? 0 : (static_cast<std::size_t>(1) << (j - 1));
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t lo = i > half ? i - half : 0;
            const std::size_t hi = std::min(n - 1, i + half);
            const double avg = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
            best = std::max(best, avg);
        }
    }
    return best;
}

namespace {

struct WeakDetail {
    double value = 0.0;
    double alpha = 0.0;
    double tail = 0.0;  // empirical fraction of samples >= alpha
};

WeakDetail weak_l1_detail(const std::vector<double>& values) {
    if (values.empty()) {
        throw Error("invalid-parameter", "weak-L1 norm of an empty sample");
    }
    std::vector<double> sorted(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sorted[i] = std::fabs(values[i]);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    double hi = sorted[static_cast<std::size_t>(std::floor(0.999 * static_cast<double>(n - 1)))];
    double lo = sorted[static_cast<std::size_t>(std::floor(0.010 * static_cast<double>(n - 1)))];
    if (!(hi > 0.0)) return {};  // all samples are zero
    if (!(lo > 0.0)) {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), 0.0);
        lo = it != sorted.end() ? *it : hi;
    }
    if (lo > hi) lo = hi;

    WeakDetail best;
    const int grid = 64;
    for (int i = 0; i < grid; ++i) {
        const double alpha =
            lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(grid - 1));
        const auto first = std::lower_bound(sorted.begin(), sorted.end(), alpha);
        const double tail =
            static_cast<double>(sorted.end() - first) / static_cast<double>(n);
        const double cand = alpha * tail;
        if (cand > best.value) best = {cand, alpha, tail};
    }
    return best;
}

}  // namespace

double weak_l1_norm(const std::vector<double>& values) { return weak_l1_detail(values).value; }

MaximalEstimate smax_weak_l1_mc(const DirichletPolynomial& d, const GroupModel& model, double u,
                                std::size_t samples, std::uint64_t seed, Exec exec) {
    if (samples == 0) {
        throw Error("invalid-parameter", "sample count must be positive");
    }
    const std::size_t dim = model.dim();
    std::vector<double> buf(samples, 0.0);
    parallel_fill(samples, exec, [&](std::size_t i) {
        auto rng = task_rng(seed, kStreamCarleson, i);
        std::vector<double> omega(dim);
        for (auto& a : omega) a = rng.next_angle();
        buf[i] = smax_u(d, model, u, omega);
    });
    const WeakDetail detail = weak_l1_detail(buf);

    MaximalEstimate out;
    out.operator_tag = "smax";
    out.p = 1.0;
    out.weak_l1 = true;
    out.samples = samples;
    out.seed = seed;
    out.estimate = detail.value;
    out.std_error = detail.alpha *
                    std::sqrt(detail.tail * (1.0 - detail.tail) / static_cast<double>(samples));
    return out;
}

RatioReport partial_sum_ratio(const DirichletPolynomial& d, const GroupModel& model,
                              std::size_t n_prefix, double k, const NormBudget& budget,
                              std::uint64_t seed) {
    if (!(k > 0.0) || k > 1.0) {
        throw Error("invalid-parameter", "Riesz exponent k must lie in (0, 1]");
    }
    if (n_prefix == 0 || n_prefix > d.size()) {
        throw Error("invalid-parameter", "prefix length out of range");
    }
    const double lam_n = d.lambda(n_prefix - 1);
    const double lam_next = d.freq.entry(d.indices[n_prefix - 1] + 1);
    if (!(lam_next > 0.0)) {
        throw Error("invalid-frequency", "successor frequency must be positive");
    }

    RatioReport out;
    out.scale = (1.0 / k) * std::pow(lam_next / (lam_next - lam_n), k);
    const TorusPolynomial full = to_torus_polynomial(d, model);
    const TorusPolynomial pref = to_torus_polynomial(partial_sum(d, n_prefix), model);
    out.sup_full =
        lp_norm(model, full, kSupNorm, NormMethod::haar_mc, budget, seed).value;
    out.sup_prefix =
        lp_norm(model, pref, kSupNorm, NormMethod::haar_mc, budget, seed).value;
    if (!(out.sup_full > 0.0)) {
        throw Error("invalid-parameter", "zero polynomial has no sup-norm ratio");
    }
    out.lhs = out.sup_prefix / out.sup_full;
    out.constant = out.lhs / out.scale;
    return out;
}

}  // namespace dlab
