#pragma once
// Finite general Dirichlet polynomials D(s) = sum_n a_n exp(-lambda_n s)
// and the operations the rest of the library builds on:
//
//   partial_sum      first N terms in index order
//   translate        a_n -> a_n exp(-lambda_n z)   (horizontal shift of s)
//   vertical_limit   a_n -> a_n h_n(omega)         (character twist)
//   riesz_mean       terms lambda_n < x weighted by (1 - lambda_n/x)^k
//   abel_majorant    |sum a_n e^{-(u+eps)lambda_n}| against the weighted
//                    partial-sum sup, with the summation-by-parts constant
//                    C(u) = 1 + 1/u^2
//   sigma_u_estimate prefix estimate of the uniform-convergence abscissa
//                    via log(sup_t |S_N(it)|)/lambda_N
//   abschnitt        restriction to terms supported on the first N basis
//                    columns of a basis decomposition
//
// A polynomial stores 1-based frequency indices; sparse index sets are fine.

#include <cstdint>
#include <string>
#include <vector>

#include "dlab/basis.hpp"
#include "dlab/common.hpp"
#include "dlab/frequency.hpp"
#include "dlab/group.hpp"
#include "dlab/rng.hpp"

namespace dlab {

struct DirichletPolynomial {
    Frequency freq;
    std::vector<std::size_t> indices;  // 1-based, strictly increasing after ctor
    std::vector<cplx> coeffs;

    DirichletPolynomial() = default;
    // Sparse terms; duplicate indices merge by coefficient addition.
    DirichletPolynomial(Frequency f, std::vector<std::size_t> idx, std::vector<cplx> c);
    // Dense prefix: coefficients for indices 1..c.size().
    static DirichletPolynomial dense(Frequency f, std::vector<cplx> c);

    std::size_t size() const { return indices.size(); }
    double lambda(std::size_t k) const { return freq.entry(indices[k]); }
    std::vector<double> lambdas() const;

    // Direct summation sum_n a_n exp(-lambda_n s).
    cplx eval(cplx s) const;
};

DirichletPolynomial partial_sum(const DirichletPolynomial& d, std::size_t n_terms);

DirichletPolynomial translate(const DirichletPolynomial& d, cplx z);

// Twist a_n by the model character at omega (row index n-1 for term index n).
// Throws Error("model-mismatch") if the model does not cover every index.
DirichletPolynomial vertical_limit(const DirichletPolynomial& d, const GroupModel& model,
                                   const std::vector<double>& omega);

// Push the polynomial onto the model's torus: term n becomes the monomial
// with exponent row n-1 of the model. Throws Error("model-mismatch") if the
// model does not cover every index.
TorusPolynomial to_torus_polynomial(const DirichletPolynomial& d, const GroupModel& model);

// Terms with lambda_n < x (strict; a tie is excluded), scaled by
// (1 - lambda_n/x)^k. Throws Error("invalid-abscissa") for x <= 0.
DirichletPolynomial riesz_mean(const DirichletPolynomial& d, double x, double k);

struct AbelCheck {
    double lhs = 0.0;       // |sum a_n e^{-(u+eps) lambda_n}|
    double rhs = 0.0;       // sup_{n<=N} |e^{-eps lambda_n} sum_{k<=n} a_k|
    double constant = 0.0;  // C(u) = 1 + 1/u^2
    bool holds = false;     // lhs <= constant * rhs
};

AbelCheck abel_majorant(const std::vector<cplx>& a, const std::vector<double>& lambda, double u,
                        double eps);

// Strategy for estimating sup_{t in R} |sum a_n e^{-i t lambda_n}|:
// a symmetric coarse grid on [-t_max, t_max] (odd point count, so t = 0 is
// always probed), local refinement around the top three coarse maxima, and an
// optional Haar probe of the torus sup when a group model is supplied.
struct SupEstimator {
    double t_max = 50.0;
    std::size_t grid = 2001;        // odd => grid contains t = 0
    int refine_rounds = 2;
    std::size_t refine_points = 41;
    std::size_t torus_samples = 0;  // 0 disables the torus probe
    std::uint64_t seed = kDefaultSeed;
};

// sup_t |sum_k coeffs[k] e^{-i t lambda[k]}| by the strategy above; a finite
// probe, hence always a lower bound on the true sup. The torus probe needs
// both a model and the 0-based model row of each term.
double sup_flow(const std::vector<double>& lambda, const std::vector<cplx>& coeffs,
                const SupEstimator& opt, const GroupModel* model = nullptr,
                const std::vector<std::size_t>* model_rows = nullptr);

struct SigmaUEstimate {
    std::vector<TrendPoint> trend;  // (N, log sup_t |S_N(it)| / lambda_N)
    double estimate = 0.0;          // sup of the trend tail
    std::vector<std::string> notes;
};

// Prefix estimate of the uniform-convergence abscissa. Prefix ends with
// lambda_N = 0 are skipped with a note; if every prefix end is skipped the
// call throws Error("undefined-abscissa").
SigmaUEstimate sigma_u_estimate(const DirichletPolynomial& d, const SupEstimator& opt,
                                const GroupModel* model = nullptr);

// Keep exactly the terms whose decomposition row is supported on basis
// columns 1..n_cols. Throws Error("model-mismatch") if the decomposition
// does not cover every index of d.
DirichletPolynomial abschnitt(const DirichletPolynomial& d, const BasisDecomposition& decomp,
                              std::size_t n_cols);

}  // namespace dlab
