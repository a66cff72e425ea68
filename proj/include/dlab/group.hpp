#pragma once
// Finite-torus models of the compact groups carrying a frequency.
//
// A model is a Q-independent basis b_1..b_P together with the integer Bohr
// matrix R of a frequency prefix (lambda_n = sum_j R[n][j] b_j). Points of
// the torus T^P are stored as angle vectors theta in [0, 2*pi)^P.
//
// Sign convention (pinned once, used everywhere): the flow is
//     beta(t)_j = exp(-i * t * b_j),   i.e. angles theta_j(t) = -t * b_j,
// and the character attached to lambda_n is
//     h_n(theta) = exp(+i * <R_n, theta>),
// so that h_n(beta(t)) = exp(-i * lambda_n * t) exactly.
//
// TorusPolynomial is the generic trigonometric object both for Dirichlet
// polynomials pushed onto the model and for the free Z^N-spectrum polynomials
// of the maximal-operator experiments.

#include <complex>
#include <cstdint>
#include <vector>

#include "dlab/basis.hpp"
#include "dlab/common.hpp"
#include "dlab/parallel.hpp"
#include "dlab/rng.hpp"

namespace dlab {

struct GroupModel {
    std::vector<double> basis;                 // b_j
    std::vector<std::vector<long long>> rows;  // R, one row per frequency index
    std::vector<double> lambda;                // cached R * b
    std::string label;

    std::size_t dim() const { return basis.size(); }
    std::size_t size() const { return rows.size(); }

    // Angles of the flow point beta(t).
    std::vector<double> flow_angles(double t) const;

    // h_n(theta); n is the 0-based row index.
    cplx character(std::size_t n, const std::vector<double>& theta) const;
};

// Build a model from a basis decomposition (numeric basis values + rows).
GroupModel build_group_model(const BasisDecomposition& decomp, std::string label = "model");

// Ordinary model for lambda = (log n), n = 1..count: basis (log p_j) over the
// primes needed, rows = prime exponent vectors.
GroupModel ordinary_model(std::int64_t count);

// Model for lambda = (n) = (0, 1, 2, ...): one basis element 1, rows (n-1).
GroupModel integer_model(std::int64_t count);

// Trigonometric polynomial sum_k coeffs[k] * z^{spectrum[k]} on T^dim.
// Duplicate exponent vectors are merged at construction.
struct TorusPolynomial {
    std::vector<std::vector<long long>> spectrum;
    std::vector<cplx> coeffs;

    TorusPolynomial() = default;
    TorusPolynomial(std::vector<std::vector<long long>> spec, std::vector<cplx> c);

    std::size_t dim() const { return spectrum.empty() ? 0 : spectrum.front().size(); }
    cplx eval(const std::vector<double>& theta) const;

    // Frequencies nu_k = <alpha_k, basis> of each term along the flow.
    std::vector<double> flow_frequencies(const std::vector<double>& basis) const;

    TorusPolynomial squared() const;  // pointwise square (spectrum convolution)
};

// Independent Haar samples: i.i.d. uniform angle vectors; sample i is drawn
// from task_rng(seed, kStreamHaar, i), so parallel == serial bit-for-bit.
std::vector<std::vector<double>> haar_sample(std::size_t dim, std::size_t count,
                                             std::uint64_t seed);

struct BesicovitchResult {
    cplx mean;          // (1/2T) * integral over [-T, T] of f(omega + beta(t)) dt, closed form
    cplx zero_term;     // contribution of the terms with nu_k = 0 (passes through exactly)
    double error_bound; // sum over nu_k != 0 of |c_k| / (|nu_k| * T)
};

// Closed-form Besicovitch mean of f along the flow through omega (angle
// vector): sum_k c_k h_k(omega) sinc(nu_k T). Never quadrature.
BesicovitchResult besicovitch_mean(const GroupModel& model, const TorusPolynomial& f,
                                   const std::vector<double>& omega, double T);

enum class NormMethod { haar_mc, flow_average };

struct NormEstimate {
    double value = 0.0;
    double std_error = 0.0;   // Monte Carlo only; 0 for closed forms
    std::size_t samples = 0;  // MC samples or grid points used
    std::string method;
    std::vector<std::string> notes;
};

struct NormBudget {
    std::size_t samples = 100000;  // haar_mc
    double T = 1e4;                // flow_average half-width
    double step = 0.05;            // flow_average Riemann step (odd p only)
};

// L_p norm of f on the model, p in (0, inf) or infinity (p <= 0 means sup).
//   haar_mc      — mean of |f|^p over Haar samples, then ^(1/p).
//   flow_average — (1/2T) int_{-T}^{T} |f(beta(t))|^p dt. For even integer p
//                  this is evaluated in closed form (expand |f^(p/2)|^2 into
//                  sinc terms); otherwise a Riemann sum at `step`.
// For p = sup: max over both Haar samples and a flow grid (documented lower
// bound).
NormEstimate lp_norm(const GroupModel& model, const TorusPolynomial& f, double p,
                     NormMethod method, const NormBudget& budget, std::uint64_t seed,
                     Exec exec = default_exec());

inline constexpr double kSupNorm = -1.0;  // pass as p to lp_norm for the sup norm

// Exact L2 norm by orthonormality of distinct characters: sqrt(sum |c_k|^2).
double parseval_l2(const TorusPolynomial& f);

}  // namespace dlab
