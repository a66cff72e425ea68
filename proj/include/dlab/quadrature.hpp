#pragma once
// Small adaptive quadrature engine used by the kernel-identity checks.
//
// Everything here reports errors in two separate buckets:
//   est_error  — accumulated local Richardson discrepancies of the adaptive
//                Simpson rule (quadrature error on the covered interval),
//   tail_bound — analytic bound on whatever mass was truncated away; the
//                callers compute it from integrand-specific decay estimates.
// The honest total is their sum; nothing is folded silently.

#include <functional>
#include <vector>

#include "dlab/common.hpp"

namespace dlab {

struct QuadratureSpec {
    double abs_tol = 1e-6;
    double half_width = 0.0;  // truncation T; 0 = choose from the tail bound
    int max_depth = 20;       // adaptive bisection depth per panel
};

struct QuadratureResult {
    cplx value{0.0, 0.0};
    double est_error = 0.0;
    double tail_bound = 0.0;
    double total_error() const { return est_error + tail_bound; }
};

// Adaptive Simpson on [a, b] down to |discrepancy| <= 15 * tol, depth-capped;
// a hit depth cap accrues the remaining discrepancy into est_error.
QuadratureResult integrate_simpson(const std::function<cplx(double)>& f, double a, double b,
                                   double tol, int max_depth = 20);

// Adaptive Simpson per consecutive panel [xs[i], xs[i+1]], with the total
// tolerance split evenly across panels.
QuadratureResult integrate_breakpoints(const std::function<cplx(double)>& f,
                                       const std::vector<double>& xs, double tol,
                                       int max_depth = 20);

// Panel edge helpers ------------------------------------------------------

// Uniform panels of width <= panel_width covering [a, b].
std::vector<double> uniform_breakpoints(double a, double b, double panel_width);

// Symmetric geometric panels for smooth decaying integrands: edges at
// center +- first, +- 2*first, +- 4*first, ... clipped to [center - T,
// center + T]. Suitable when the integrand has a single peak at `center`.
std::vector<double> geometric_breakpoints(double center, double first, double T);

// Union of several breakpoint lists, sorted, deduplicated, clipped to [lo, hi].
std::vector<double> merge_breakpoints(const std::vector<std::vector<double>>& lists, double lo,
                                      double hi);

}  // namespace dlab
