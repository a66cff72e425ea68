#include "dlab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace dlab {

namespace {

struct SimpsonScratch {
    const std::function<cplx(double)>& f;
    double err = 0.0;

    cplx recurse(double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol,
                 int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const cplx flm = f(lm);
        const cplx frm = f(rm);
        const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const cplx delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
            err += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;  // Richardson correction
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
};

}  // namespace

QuadratureResult integrate_simpson(const std::function<cplx(double)>& f, double a, double b,
                                   double tol, int max_depth) {
    QuadratureResult out;
    if (!(b > a)) return out;
    SimpsonScratch scratch{f};
    const double m = 0.5 * (a + b);
    const cplx fa = f(a);
    const cplx fm = f(m);
    const cplx fb = f(b);
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    out.value = scratch.recurse(a, b, fa, fm, fb, whole, tol, max_depth);
    out.est_error = scratch.err;
    return out;
}

QuadratureResult integrate_breakpoints(const std::function<cplx(double)>& f,
                                       const std::vector<double>& xs, double tol,
                                       int max_depth) {
    QuadratureResult out;
    if (xs.size() < 2) return out;
    const double per_panel = tol / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const auto part = integrate_simpson(f, xs[i], xs[i + 1], per_panel, max_depth);
        out.value += part.value;
        out.est_error += part.est_error;
    }
    return out;
}

std::vector<double> uniform_breakpoints(double a, double b, double panel_width) {
    std::vector<double> xs;
    if (!(b > a) || !(panel_width > 0.0)) return xs;
    const auto n = static_cast<std::size_t>(std::ceil((b - a) / panel_width));
    xs.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        xs.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n));
    }
    return xs;
}

std::vector<double> geometric_breakpoints(double center, double first, double T) {
    std::vector<double> xs{center};
    for (double w = first; w < T; w *= 2.0) {
        xs.push_back(center + w);
        xs.push_back(center - w);
    }
    xs.push_back(center + T);
    xs.push_back(center - T);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

std::vector<double> merge_breakpoints(const std::vector<std::vector<double>>& lists, double lo,
                                      double hi) {
    std::vector<double> xs{lo, hi};
    for (const auto& list : lists) {
        for (double x : list) {
            if (x > lo && x < hi) xs.push_back(x);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace dlab
