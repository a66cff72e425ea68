#include "dlab/helson.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dlab/basis.hpp"

namespace dlab {

namespace {

// Smallest prime factor for every n <= n_max (spf[0] = spf[1] = 0).
std::vector<std::int64_t> spf_sieve(std::int64_t n_max) {
    std::vector<std::int64_t> spf(static_cast<std::size_t>(n_max) + 1, 0);
    for (std::int64_t i = 2; i <= n_max; ++i) {
        if (spf[i] != 0) continue;
        for (std::int64_t j = i; j <= n_max; j += i) {
            if (spf[j] == 0) spf[j] = i;
        }
    }
    return spf;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

HelsonSummary helson_simulate(const Frequency& freq, const std::vector<cplx>& coeffs,
                              double sigma, std::size_t paths, std::uint64_t seed, Exec exec,
                              double basis_tau) {
    if (!(sigma > 0.0)) {
        throw Error("invalid-abscissa", "simulation abscissa sigma must be positive");
    }
    if (paths == 0) {
        throw Error("invalid-parameter", "at least one character path required");
    }
    if (coeffs.empty()) {
        throw Error("invalid-parameter", "empty coefficient vector");
    }
    const auto n_max = static_cast<std::int64_t>(coeffs.size());

    HelsonSummary out;
    for (std::int64_t n = 1; 2 * n <= n_max; n *= 2) out.block_start.push_back(n);
    const std::size_t blocks = out.block_start.size();

    // Poisson-type damping weights a_n e^{-lambda_n sigma}, shared by paths.
    const std::vector<double> lam = freq.prefix(n_max);
    std::vector<cplx> damped(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        damped[k] = coeffs[k] * std::exp(-sigma * lam[k]);
    }

    // l2 regime diagnostic: the dyadic mass sum_{(N,2N]} |a_n|^2 should decay
    // for square-summable inputs.
    if (blocks >= 2) {
        auto block_mass = [&](std::int64_t start) {
            double acc = 0.0;
            for (std::int64_t n = start + 1; n <= 2 * start; ++n) {
                acc += sqr(std::abs(coeffs[static_cast<std::size_t>(n - 1)]));
            }
            return acc;
        };
        if (block_mass(out.block_start.back()) > block_mass(out.block_start.front())) {
            out.notes.push_back("prefix l2 mass is not decaying; outside the l2 regime");
        }
    }

    // Scheme-specific shared state.
    std::vector<std::int64_t> spf;
    std::vector<std::int64_t> primes;
    BasisDecomposition decomp;
    switch (freq.kind()) {
        case Frequency::Kind::log_n:
            out.scheme = "multiplicative";
            spf = spf_sieve(n_max);
            for (std::int64_t n = 2; n <= n_max; ++n) {
                if (spf[n] == n) primes.push_back(n);
            }
            break;
        case Frequency::Kind::integer_n:
            out.scheme = "circle";
            break;
        case Frequency::Kind::listed:
            out.scheme = "basis";
            decomp = decompose_basis_numeric(lam, basis_tau);
            break;
        default:
            out.scheme = "independent";
            out.notes.push_back(
                "independent-phase scheme: diagnostic only, no divergence claim");
            break;
    }

    out.path_increments.assign(paths, std::vector<double>(blocks, 0.0));
    parallel_fill(paths, exec, [&](std::size_t p) {
        auto rng = task_rng(seed, kStreamHelson, p);
        std::vector<cplx> chi(static_cast<std::size_t>(n_max) + 1, cplx(1.0, 0.0));
        switch (freq.kind()) {
            case Frequency::Kind::log_n: {
                std::vector<cplx> at_prime(primes.size());
                for (auto& v : at_prime) v = unit_phase(rng.next_angle());
                std::vector<std::size_t> prime_slot(static_cast<std::size_t>(n_max) + 1, 0);
                for (std::size_t i = 0; i < primes.size(); ++i) prime_slot[primes[i]] = i;
                for (std::int64_t n = 2; n <= n_max; ++n) {
                    chi[n] = at_prime[prime_slot[spf[n]]] * chi[n / spf[n]];
                }
                break;
            }
            case Frequency::Kind::integer_n: {
                const double theta = rng.next_angle();
                for (std::int64_t n = 1; n <= n_max; ++n) {
                    chi[n] = unit_phase(std::fmod(static_cast<double>(n - 1) * theta, kTwoPi));
                }
                break;
            }
            case Frequency::Kind::listed: {
                std::vector<double> theta(decomp.basis.size());
                for (auto& a : theta) a = rng.next_angle();
                for (std::int64_t n = 1; n <= n_max; ++n) {
                    double phase = 0.0;
                    const auto& row = decomp.rows[static_cast<std::size_t>(n - 1)];
                    for (std::size_t j = 0; j < theta.size(); ++j) {
                        phase += static_cast<double>(row[j]) * theta[j];
                    }
                    chi[n] = unit_phase(std::fmod(phase, kTwoPi));
                }
                break;
            }
            default: {
                for (std::int64_t n = 1; n <= n_max; ++n) {
                    chi[n] = unit_phase(rng.next_angle());
                }
                break;
            }
        }
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::int64_t start = out.block_start[b];
            cplx acc(0.0, 0.0);
            for (std::int64_t n = start + 1; n <= 2 * start; ++n) {
                acc += damped[static_cast<std::size_t>(n - 1)] * chi[n];
            }
            out.path_increments[p][b] = std::abs(acc);
        }
    });

    out.median_increment.resize(blocks);
    out.mean_increment.resize(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        std::vector<double> column(paths);
        for (std::size_t p = 0; p < paths; ++p) column[p] = out.path_increments[p][b];
        out.median_increment[b] = median_of(column);
        double mean = 0.0;
        for (double v : column) mean += v;
        out.mean_increment[b] = mean / static_cast<double>(paths);
    }
    return out;
}

}  // namespace dlab
