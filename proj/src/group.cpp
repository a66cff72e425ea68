#include "dlab/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace dlab {

namespace {

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<bool> comp(static_cast<std::size_t>(std::max<std::int64_t>(n, 1)) + 1, false);
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 2; p <= n; ++p) {
        if (!comp[static_cast<std::size_t>(p)]) {
            primes.push_back(p);
            for (std::int64_t q = p * p; q <= n; q += p) comp[static_cast<std::size_t>(q)] = true;
        }
    }
    return primes;
}

double dot_rows(const std::vector<long long>& row, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) acc += static_cast<double>(row[j]) * b[j];
    return acc;
}

}  // namespace

std::vector<double> GroupModel::flow_angles(double t) const {
    std::vector<double> theta(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        double a = std::fmod(-t * basis[j], kTwoPi);
        if (a < 0.0) a += kTwoPi;
        theta[j] = a;
    }
    return theta;
}

cplx GroupModel::character(std::size_t n, const std::vector<double>& theta) const {
    if (n >= rows.size()) {
        throw Error("model-mismatch", "character index out of range");
    }
    double phase = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) {
        phase += static_cast<double>(rows[n][j]) * theta[j];
    }
    return unit_phase(phase);
}

GroupModel build_group_model(const BasisDecomposition& decomp, std::string label) {
    if (decomp.basis.empty()) {
        throw Error("invalid-model", "a group model needs a nonempty basis");
    }
    GroupModel m;
    m.basis = decomp.basis;
    m.rows = decomp.rows;
    m.label = std::move(label);
    m.lambda.reserve(m.rows.size());
    for (const auto& row : m.rows) m.lambda.push_back(dot_rows(row, m.basis));
    return m;
}

GroupModel ordinary_model(std::int64_t count) {
    if (count < 1) {
        throw Error("invalid-model", "ordinary model needs count >= 1");
    }
    const auto primes = primes_up_to(std::max<std::int64_t>(count, 2));
    GroupModel m;
    m.label = "ordinary(log n)";
    m.basis.reserve(primes.size());
    for (auto p : primes) m.basis.push_back(std::log(static_cast<double>(p)));
    m.rows.reserve(static_cast<std::size_t>(count));
    for (std::int64_t n = 1; n <= count; ++n) {
        std::vector<long long> row(primes.size(), 0);
        std::int64_t k = n;
        for (std::size_t j = 0; j < primes.size() && k > 1; ++j) {
            while (k % primes[j] == 0) {
                ++row[j];
                k /= primes[j];
            }
        }
        m.rows.push_back(std::move(row));
    }
    for (const auto& row : m.rows) m.lambda.push_back(dot_rows(row, m.basis));
    return m;
}

GroupModel integer_model(std::int64_t count) {
    if (count < 1) {
        throw Error("invalid-model", "integer model needs count >= 1");
    }
    GroupModel m;
    m.label = "integer(n)";
    m.basis = {1.0};
    for (std::int64_t n = 0; n < count; ++n) {
        m.rows.push_back({n});
        m.lambda.push_back(static_cast<double>(n));
    }
    return m;
}

TorusPolynomial::TorusPolynomial(std::vector<std::vector<long long>> spec, std::vector<cplx> c) {
    if (spec.size() != c.size()) {
        throw Error("invalid-polynomial", "spectrum and coefficient counts differ");
    }
    const std::size_t d = spec.empty() ? 0 : spec.front().size();
    std::map<std::vector<long long>, cplx> merged;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        if (spec[k].size() != d) {
            throw Error("invalid-polynomial", "inconsistent exponent vector lengths");
        }
        merged[spec[k]] += c[k];
    }
    spectrum.reserve(merged.size());
    coeffs.reserve(merged.size());
    for (auto& [alpha, coeff] : merged) {
        spectrum.push_back(alpha);
        coeffs.push_back(coeff);
    }
}

cplx TorusPolynomial::eval(const std::vector<double>& theta) const {
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        double phase = 0.0;
        for (std::size_t j = 0; j < theta.size(); ++j) {
            phase += static_cast<double>(spectrum[k][j]) * theta[j];
        }
        acc += coeffs[k] * unit_phase(phase);
    }
    return acc;
}

std::vector<double> TorusPolynomial::flow_frequencies(const std::vector<double>& basis) const {
    std::vector<double> nu;
    nu.reserve(spectrum.size());
    for (const auto& alpha : spectrum) nu.push_back(dot_rows(alpha, basis));
    return nu;
}

TorusPolynomial TorusPolynomial::squared() const {
    std::vector<std::vector<long long>> spec;
    std::vector<cplx> c;
    spec.reserve(spectrum.size() * spectrum.size());
    c.reserve(spectrum.size() * spectrum.size());
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        for (std::size_t l = 0; l < spectrum.size(); ++l) {
            std::vector<long long> sum(spectrum[k].size());
            for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = spectrum[k][j] + spectrum[l][j];
            spec.push_back(std::move(sum));
            c.push_back(coeffs[k] * coeffs[l]);
        }
    }
    return TorusPolynomial(std::move(spec), std::move(c));
}

std::vector<std::vector<double>> haar_sample(std::size_t dim, std::size_t count,
                                             std::uint64_t seed) {
    std::vector<std::vector<double>> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto rng = task_rng(seed, kStreamHaar, i);
        out[i].resize(dim);
        for (std::size_t j = 0; j < dim; ++j) out[i][j] = rng.next_angle();
    }
    return out;
}

BesicovitchResult besicovitch_mean(const GroupModel& model, const TorusPolynomial& f,
                                   const std::vector<double>& omega, double T) {
    if (!(T > 0.0)) {
        throw Error("invalid-parameter", "averaging half-width T must be positive");
    }
    if (omega.size() != model.dim() || f.dim() != model.dim()) {
        throw Error("invalid-parameter", "omega/polynomial dimension does not match model");
    }
    const auto nu = f.flow_frequencies(model.basis);
    BesicovitchResult res;
    res.mean = cplx(0, 0);
    res.zero_term = cplx(0, 0);
    res.error_bound = 0.0;
    for (std::size_t k = 0; k < f.spectrum.size(); ++k) {
        double phase = 0.0;
        for (std::size_t j = 0; j < omega.size(); ++j) {
            phase += static_cast<double>(f.spectrum[k][j]) * omega[j];
        }
        const cplx at_omega = f.coeffs[k] * unit_phase(phase);
        if (nu[k] == 0.0) {
            // The zero-frequency terms survive the averaging exactly.
            res.mean += at_omega;
            res.zero_term += at_omega;
        } else {
            res.mean += at_omega * sinc(nu[k] * T);
            res.error_bound += std::abs(f.coeffs[k]) / (std::fabs(nu[k]) * T);
        }
    }
    return res;
}

namespace {

TorusPolynomial torus_pow(const TorusPolynomial& f, int half_power) {
    TorusPolynomial g = f;
    for (int i = 1; i < half_power; ++i) {
        // multiply g by f (same pairwise expansion as squared, mixed operands)
        std::vector<std::vector<long long>> spec;
        std::vector<cplx> c;
        for (std::size_t k = 0; k < g.spectrum.size(); ++k) {
            for (std::size_t l = 0; l < f.spectrum.size(); ++l) {
                std::vector<long long> sum(f.spectrum[l].size());
                for (std::size_t j = 0; j < sum.size(); ++j) {
                    sum[j] = g.spectrum[k][j] + f.spectrum[l][j];
                }
                spec.push_back(std::move(sum));
                c.push_back(g.coeffs[k] * f.coeffs[l]);
            }
        }
        g = TorusPolynomial(std::move(spec), std::move(c));
    }
    return g;
}

NormEstimate sup_probe(const GroupModel& model, const TorusPolynomial& f,
                       const NormBudget& budget, std::uint64_t seed, Exec exec) {
    NormEstimate est;
    est.method = "sup-probe(haar+flow)";
    const std::size_t n = std::max<std::size_t>(budget.samples, 1);
    std::vector<double> vals(n);
    parallel_fill(n, exec, [&](std::size_t i) {
        auto rng = task_rng(seed, kStreamHaar, i);
        std::vector<double> theta(model.dim());
        for (auto& a : theta) a = rng.next_angle();
        vals[i] = std::abs(f.eval(theta));
    });
    double m = 0.0;
    for (double v : vals) m = std::max(m, v);
    // Flow probe on [0, T]: the flow orbit is where Dirichlet-polynomial sup
    // norms live; this is a lower bound like any finite probe.
    const std::size_t g = n;
    std::vector<double> fvals(g);
    const double dt = budget.T / static_cast<double>(g);
    parallel_fill(g, exec, [&](std::size_t i) {
        const double t = (static_cast<double>(i) + 0.5) * dt;
        fvals[i] = std::abs(f.eval(model.flow_angles(t)));
    });
    for (double v : fvals) m = std::max(m, v);
    est.value = m;
    est.samples = n + g;
    est.notes.push_back("sup norm probed on Haar samples and a flow grid; lower bound");
    return est;
}

}  // namespace

NormEstimate lp_norm(const GroupModel& model, const TorusPolynomial& f, double p,
                     NormMethod method, const NormBudget& budget, std::uint64_t seed, Exec exec) {
    if (f.dim() != model.dim()) {
        throw Error("model-mismatch", "polynomial dimension does not match model");
    }
    if (p == kSupNorm) {
        return sup_probe(model, f, budget, seed, exec);
    }
    if (p < 1.0) {
        throw Error("invalid-exponent", "lp norm needs p >= 1 (or the sup sentinel)");
    }

    NormEstimate est;
    if (method == NormMethod::haar_mc) {
        est.method = "haar-mc";
        const std::size_t n = std::max<std::size_t>(budget.samples, 2);
        std::vector<double> vals(n);
        parallel_fill(n, exec, [&](std::size_t i) {
            auto rng = task_rng(seed, kStreamHaar, i);
            std::vector<double> theta(model.dim());
            for (auto& a : theta) a = rng.next_angle();
            vals[i] = std::pow(std::abs(f.eval(theta)), p);
        });
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (double v : vals) var += sqr(v - mean);
        var /= static_cast<double>(n - 1);
        const double se_mean = std::sqrt(var / static_cast<double>(n));
        est.value = std::pow(mean, 1.0 / p);
        // delta method: d/dm m^{1/p} = m^{1/p-1}/p
        est.std_error = mean > 0.0 ? se_mean * std::pow(mean, 1.0 / p - 1.0) / p : se_mean;
        est.samples = n;
        return est;
    }

    // flow_average
    const double T = budget.T;
    if (!(T > 0.0)) {
        throw Error("invalid-parameter", "flow average needs T > 0");
    }
    const double p_round = std::round(p);
    const bool even_integer = std::fabs(p - p_round) < 1e-12 &&
                              static_cast<long long>(p_round) % 2 == 0 && p_round >= 2.0 &&
                              p_round <= 8.0;
    if (even_integer) {
        // |f|^p = |f^(p/2)|^2, and the flow average of |g|^2 through the
        // identity is sum_{k,l} g_k conj(g_l) sinc((nu_k - nu_l) T).
        const TorusPolynomial g = torus_pow(f, static_cast<int>(p_round) / 2);
        const auto nu = g.flow_frequencies(model.basis);
        double acc = 0.0;
        for (std::size_t k = 0; k < g.spectrum.size(); ++k) {
            for (std::size_t l = 0; l < g.spectrum.size(); ++l) {
                const double s = sinc((nu[k] - nu[l]) * T);
                acc += (g.coeffs[k] * std::conj(g.coeffs[l])).real() * s;
            }
        }
        acc = std::max(acc, 0.0);
        est.method = "flow-average(closed form)";
        est.value = std::pow(acc, 1.0 / p);
        est.samples = g.spectrum.size() * g.spectrum.size();
        est.notes.push_back("even integer p: sinc expansion, no quadrature");
        return est;
    }

    est.method = "flow-average(riemann)";
    const double step = budget.step > 0.0 ? budget.step : 0.05;
    const std::size_t g = static_cast<std::size_t>(std::max(2.0, std::floor(2.0 * T / step)));
    std::vector<double> vals(g);
    const double dt = 2.0 * T / static_cast<double>(g);
    parallel_fill(g, exec, [&](std::size_t i) {
        const double t = -T + (static_cast<double>(i) + 0.5) * dt;
        vals[i] = std::pow(std::abs(f.eval(model.flow_angles(t))), p);
    });
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(g);
    est.value = std::pow(mean, 1.0 / p);
    est.samples = g;
    est.notes.push_back("midpoint Riemann sum along the flow; deterministic grid");
    return est;
}

double parseval_l2(const TorusPolynomial& f) {
    double acc = 0.0;
    for (const auto& c : f.coeffs) acc += std::norm(c);
    return std::sqrt(acc);
}

}  // namespace dlab
