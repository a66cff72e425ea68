#pragma once

// Maximal operators over finite torus models, plus the exact integer lattice
// machinery used to transfer a real direction x onto the first coordinate.
//
//   unimodular_plan   builds an integer matrix A with det A = 1 whose first
//                     row is the rational direction q, second row the Bezout
//                     companion (r1, r2, 0, ...) with q1 r2 - q2 r1 = 1, and
//                     identity tail rows.  Its exact integer inverse gives
//                     <q, Ainv b> = b1 for every integer vector b.
//   carleson_maximal  M_x f(z) = sup_{S>0} |sum_{<a,x> <= S} fhat(a) z^a|,
//                     brute force over distinct thresholds with ties grouped
//                     (all a with equal <a,x> enter the prefix together; the
//                     group of keys <= 0 is present at every stage).
//   smax_u            sup_N |sum_{n<=N} a_n e^{-u lambda_n} chi_n(omega)|.
//   tmax_weighted     sup_N |S_N(omega)| k_N ((l_{N+1}-l_N)/l_{N+1})^{k_N}
//                     for weights k_N in (0,1]; needs lambda_{N+1}.
//   hl_flow           discrete Hardy-Littlewood sup along the flow: window
//                     averages of |f(omega beta(t))| over dyadic windows
//                     2^j * step centered at grid points; a lower bound of
//                     the true sup over intervals.
//   weak_l1_norm      empirical sup_alpha alpha * (fraction of |g| >= alpha)
//                     over 64 log-spaced alpha between the 1st and 99.9th
//                     percentiles.
//   partial_sum_ratio lhs = sup|S_N D| / sup|D| against the reference scale
//                     (1/k)(l_{N+1}/(l_{N+1}-l_N))^k; the quotient is
//                     reported, never asserted against a fixed constant.

#include <cstdint>
#include <string>
#include <vector>

#include "dlab/common.hpp"
#include "dlab/group.hpp"
#include "dlab/parallel.hpp"
#include "dlab/rng.hpp"
#include "dlab/series.hpp"

namespace dlab {

struct UnimodularPlan {
    std::vector<long long> q;                  // direction numerators, x = q / Q
    long long Q = 1;                           // positive common denominator
    std::vector<std::vector<long long>> A;     // det A = 1, first row q
    std::vector<std::vector<long long>> Ainv;  // exact integer inverse

    std::size_t dim() const { return q.size(); }
};

// Requires dim >= 2 and gcd(q1, q2) = 1 ("not-coprime" otherwise).  r1 is
// normalized into [0, |q1|) when q1 != 0.
UnimodularPlan unimodular_plan(const std::vector<long long>& q, long long Q);

// Exact integer determinant (Bareiss fraction-free elimination).
long long det_exact(const std::vector<std::vector<long long>>& m);

struct RationalDirection {
    std::vector<long long> q;       // numerators after any coordinate permutation
    long long Q = 1;                // denominator, q_j / Q ~ x_perm[j]
    std::vector<std::size_t> perm;  // perm[j] = original index of coordinate j
};

// Approximates a real direction by q/Q with Q <= q_max via per-coordinate
// continued fractions.  If the leading pair is not coprime, coordinates are
// permuted; failing that, Q is incremented.  Throws "not-coprime" when no
// admissible representative exists (e.g. the zero direction).
RationalDirection rationalize_direction(const std::vector<double>& x, long long q_max = 1000000);

// M^t alpha, the spectrum map of the monomial substitution z -> Phi_M(z).
std::vector<long long> transpose_apply(const std::vector<std::vector<long long>>& m,
                                       const std::vector<long long>& alpha);

// f composed with Phi_M: same coefficients on the mapped spectrum.
TorusPolynomial substituted_polynomial(const TorusPolynomial& f,
                                       const std::vector<std::vector<long long>>& m);

double carleson_maximal(const TorusPolynomial& f, const std::vector<double>& x,
                        const std::vector<double>& theta);

struct MaximalEstimate {
    std::string operator_tag;
    double p = 2.0;
    bool weak_l1 = false;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double estimate = 0.0;
    double std_error = 0.0;
};

// Haar Monte Carlo of ||M_x f||_p.  With `substitution` set to an integer
// matrix M, the staged prefixes keep their thresholds <a, x> from the
// original spectrum but are evaluated on the substituted monomials z^{M^t a},
// i.e. the integrand becomes M_x f(Phi_M(z)).
MaximalEstimate carleson_norm_mc(const TorusPolynomial& f, const std::vector<double>& x,
                                 double p, std::size_t samples, std::uint64_t seed,
                                 const std::vector<std::vector<long long>>* substitution = nullptr,
                                 Exec exec = Exec::openmp);

// min over Haar samples of M_x f(z) - |f(z)| (pointwise dominance margin).
double carleson_min_margin(const TorusPolynomial& f, const std::vector<double>& x,
                           std::size_t samples, std::uint64_t seed, Exec exec = Exec::openmp);

// Model rows 0..size-1 must correspond to polynomial terms in order (dense
// index prefixes), as produced by build_group_model on the polynomial's
// frequency prefix.
double smax_u(const DirichletPolynomial& d, const GroupModel& model, double u,
              const std::vector<double>& omega);

double tmax_weighted(const DirichletPolynomial& d, const GroupModel& model,
                     const std::vector<double>& weights, const std::vector<double>& omega);

struct HlFlowOptions {
    double step = 0.05;  // grid spacing; windows have lengths 2^j * step
    int levels = 10;     // j = 0..levels
    double t_max = 16.0; // grid covers [-t_max, t_max], always containing 0
};

double hl_flow(const DirichletPolynomial& d, const GroupModel& model,
               const std::vector<double>& omega, const HlFlowOptions& opt = {});

double weak_l1_norm(const std::vector<double>& values);

// Weak-L1 quasinorm of omega -> S^u_max(f)(omega) over Haar samples.  The
// error bar is the binomial standard error of the tail fraction at the
// maximizing alpha, scaled by alpha.
MaximalEstimate smax_weak_l1_mc(const DirichletPolynomial& d, const GroupModel& model, double u,
                                std::size_t samples, std::uint64_t seed,
                                Exec exec = Exec::openmp);

struct RatioReport {
    double sup_full = 0.0;    // sup |D| estimate
    double sup_prefix = 0.0;  // sup |S_N D| estimate
    double lhs = 0.0;         // sup_prefix / sup_full
    double scale = 0.0;       // (1/k) (l_{N+1} / (l_{N+1} - l_N))^k
    double constant = 0.0;    // lhs / scale, reported only
};

// Dense-prefix polynomial of length >= N; the frequency must supply entry
// N+1.  k in (0, 1].  Sup norms via the model sup probe (lower bounds).
RatioReport partial_sum_ratio(const DirichletPolynomial& d, const GroupModel& model,
                              std::size_t n_prefix, double k, const NormBudget& budget = {},
                              std::uint64_t seed = kDefaultSeed);

}  // namespace dlab
