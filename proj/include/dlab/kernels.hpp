#pragma once
// Half-plane Poisson kernel machinery and the Perron-type line integrals.
//
// Identities implemented (closed forms primary, quadrature as oracle):
//
//   P_u(t) = (1/pi) u/(u^2 + t^2),  ||P_u||_1 = 1
//
//   (e^{-i lambda .} * P_u)(t) = e^{-(u+it) lambda}          (lambda >= 0)
//
//   Gamma(k+1)/(2 pi i) \int_{alpha-ioo}^{alpha+ioo} e^{ys} / s^{1+k} ds
//       = y^k for y >= 0, 0 for y < 0                        (k > 0)
//
//   Gamma(k+1)/(2 pi) F( (g*P_u) / (u+i.)^{1+k} )(-x)
//       = e^{-u|x|} sum_{lambda_n < x} a_n (x - lambda_n)^k  (k > 0)
//   and the k = 0 variant without the (x - lambda_n)^k factor.
//
//   Damping decay: ( \int (P_u(t-y)/|u+it|)^{1+eps} dt )^{1/(1+eps)}
//       <= 4 |y|^{-(1 + eps/(1+eps))}            for |y| > 4u
//       <= (1/u)^{1 + eps/(1+eps)}               for every y   (Lyapunov)
//   and the outer y-integral is <= 8 ((1+eps)/eps) u^{-eps/(1+eps)}.
//
// The line integral is evaluated after lifting the integrand twice by
// integration by parts (boundary terms vanish over the full line):
//     I_k = ((1+k)/y) I_{k+1} = ((1+k)(2+k)/y^2) I_{k+2},
// which turns the |t|^{-1-k} decay into |t|^{-3-k} and makes the truncation
// tail bound 2 T^{-(2+k)}/(2+k) cheap to satisfy. y = 0 integrands are not
// oscillatory and integrate over geometric panels with the exact
// antiderivative tail bound 2/(k T^k).

#include <vector>

#include "dlab/common.hpp"
#include "dlab/quadrature.hpp"

namespace dlab {

// Pointwise Poisson kernel; throws Error("invalid-parameter") for u <= 0.
double poisson_eval(double u, double t);

// Quadrature of P_u over [-T, T]; tail_bound is the exact truncated mass
// (2/pi) atan(u/T). The value plus tail should reproduce ||P_u||_1 = 1.
QuadratureResult poisson_mass(double u, const QuadratureSpec& quad);

// Closed form e^{-(u+it) lambda}; throws Error("invalid-frequency") for
// lambda < 0 and Error("invalid-parameter") for u <= 0.
cplx char_poisson_closed(double lambda, double u, double t);

// Oracle: \int e^{-i lambda (t-y)} P_u(y) dy by panel quadrature with an
// integration-by-parts tail bound (mass tail when lambda = 0).
QuadratureResult char_poisson_quad(double lambda, double u, double t, const QuadratureSpec& quad);

struct PerronEstimate {
    double closed_form = 0.0;  // y^k for y >= 0, else 0
    cplx estimate{0.0, 0.0};   // quadrature value (imaginary part ~ 0)
    double est_error = 0.0;
    double tail_bound = 0.0;
    double abs_deviation = 0.0;  // |estimate - closed_form|
};

// Quadrature of Gamma(k+1)/(2 pi) e^{y alpha} \int e^{iyt} (alpha+it)^{-1-k} dt
// against the closed form. Throws Error("invalid-parameter") for k <= 0 or
// alpha <= 0 and Error("accuracy-not-achieved") when a caller-pinned
// half_width cannot meet the tolerance (message carries both numbers).
PerronEstimate perron_line_integral(double y, double k, double alpha, const QuadratureSpec& quad);

// Closed form e^{-u|x|} sum_{lambda_n < x} coeffs_n (x - lambda_n)^k.
// k = 0 is allowed; k < 0 throws Error("invalid-parameter"), as does a tie
// x = lambda_n when k = 0 (the k = 0 transform jumps there).
cplx perron_transform(const std::vector<double>& lambda, const std::vector<cplx>& coeffs,
                      double u, double k, double x);

struct TransformCheck {
    cplx closed_form{0.0, 0.0};
    cplx oracle{0.0, 0.0};  // per-character line-integral quadrature sum
    double est_error = 0.0;
    double tail_bound = 0.0;
    double abs_deviation = 0.0;  // |oracle - closed_form|
};

// Oracle for perron_transform: the Fourier integral splits per character into
// coeff_n e^{-u lambda_n} \int e^{i(x - lambda_n) t} (u+it)^{-1-k} dt, each
// evaluated like perron_line_integral.
TransformCheck perron_transform_check(const std::vector<double>& lambda,
                                      const std::vector<cplx>& coeffs, double u, double k,
                                      double x, const QuadratureSpec& quad);

struct DecayCheck {
    double value = 0.0;       // (inner integral)^{1/(1+eps)}
    double bound = 0.0;       // applicable right-hand side
    bool large_y = false;     // |y| > 4u branch
    bool holds = false;       // value (plus worst-case error) <= bound
    double est_error = 0.0;   // on the inner integral, pre-root
    double tail_bound = 0.0;  // on the inner integral, pre-root
};

DecayCheck decay_bound_check(double u, double eps, double y, const QuadratureSpec& quad);

struct OuterDecayCheck {
    double value = 0.0;          // quadrature over |y| <= Y
    double tail_bound = 0.0;     // from the pointwise-verified |y| > 4u decay
    double bound = 0.0;          // 8 ((1+eps)/eps) u^{-eps/(1+eps)}
    double sharper_bound = 0.0;  // 4 u^{-q} + 8((1+eps)/eps) (4u)^{-q}, q = eps/(1+eps)
    bool holds = false;
};

// Outer integral over y of the inner root. The |y| > Y tail is accounted with
// the |y| > 4u decay estimate, which decay_bound_check verifies pointwise.
OuterDecayCheck decay_outer_check(double u, double eps, const QuadratureSpec& quad);

// The substitution profiles from the decay proof, exposed for monotonicity
// grid tests: g on (0, 1/y] for y > 4u, h on (0, 1/|y|] for y < -4u.
double decay_profile_g(double u, double y, double t);
double decay_profile_h(double u, double y, double t);

}  // namespace dlab
