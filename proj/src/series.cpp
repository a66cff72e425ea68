#include "dlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dlab {

DirichletPolynomial::DirichletPolynomial(Frequency f, std::vector<std::size_t> idx,
                                         std::vector<cplx> c)
    : freq(std::move(f)) {
    if (idx.size() != c.size()) {
        throw Error("invalid-polynomial", "index and coefficient counts differ");
    }
    std::map<std::size_t, cplx> merged;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] < 1) {
            throw Error("invalid-polynomial", "term indices are 1-based");
        }
        freq.entry(idx[k]);  // validates the index against the frequency
        merged[idx[k]] += c[k];
    }
    indices.reserve(merged.size());
    coeffs.reserve(merged.size());
    for (auto& [n, a] : merged) {
        indices.push_back(n);
        coeffs.push_back(a);
    }
}

DirichletPolynomial DirichletPolynomial::dense(Frequency f, std::vector<cplx> c) {
    std::vector<std::size_t> idx(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) idx[k] = k + 1;
    return DirichletPolynomial(std::move(f), std::move(idx), std::move(c));
}

std::vector<double> DirichletPolynomial::lambdas() const {
    std::vector<double> out(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) out[k] = freq.entry(indices[k]);
    return out;
}

cplx DirichletPolynomial::eval(cplx s) const {
    cplx acc(0, 0);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        acc += coeffs[k] * std::exp(-lambda(k) * s);
    }
    return acc;
}

DirichletPolynomial partial_sum(const DirichletPolynomial& d, std::size_t n_terms) {
    DirichletPolynomial out;
    out.freq = d.freq;
    const std::size_t n = std::min(n_terms, d.size());
    out.indices.assign(d.indices.begin(), d.indices.begin() + static_cast<std::ptrdiff_t>(n));
    out.coeffs.assign(d.coeffs.begin(), d.coeffs.begin() + static_cast<std::ptrdiff_t>(n));
    return out;
}

DirichletPolynomial translate(const DirichletPolynomial& d, cplx z) {
    DirichletPolynomial out = d;
    for (std::size_t k = 0; k < out.size(); ++k) {
        out.coeffs[k] *= std::exp(-out.lambda(k) * z);
    }
    return out;
}

DirichletPolynomial vertical_limit(const DirichletPolynomial& d, const GroupModel& model,
                                   const std::vector<double>& omega) {
    if (omega.size() != model.dim()) {
        throw Error("model-mismatch", "omega dimension does not match model");
    }
    DirichletPolynomial out = d;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t n = out.indices[k];
        if (n > model.size()) {
            throw Error("model-mismatch",
                        "term index " + std::to_string(n) + " beyond model rows");
        }
        out.coeffs[k] *= model.character(n - 1, omega);
    }
    return out;
}

TorusPolynomial to_torus_polynomial(const DirichletPolynomial& d, const GroupModel& model) {
    std::vector<std::vector<long long>> spec(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        const std::size_t n = d.indices[k];
        if (n > model.size()) {
            throw Error("model-mismatch",
                        "term index " + std::to_string(n) + " beyond model rows");
        }
        spec[k] = model.rows[n - 1];
    }
    return TorusPolynomial(std::move(spec), d.coeffs);
}

DirichletPolynomial riesz_mean(const DirichletPolynomial& d, double x, double k) {
    if (!(x > 0.0)) {
        throw Error("invalid-abscissa", "Riesz mean needs x > 0");
    }
    if (k < 0.0) {
        throw Error("invalid-parameter", "Riesz mean needs k >= 0");
    }
    DirichletPolynomial out;
    out.freq = d.freq;
    for (std::size_t j = 0; j < d.size(); ++j) {
        const double lam = d.lambda(j);
        if (lam < x) {  // strict: a tie lambda_n = x is excluded
            out.indices.push_back(d.indices[j]);
            out.coeffs.push_back(d.coeffs[j] * std::pow(1.0 - lam / x, k));
        }
    }
    return out;
}

AbelCheck abel_majorant(const std::vector<cplx>& a, const std::vector<double>& lambda, double u,
                        double eps) {
    if (!(u > 0.0) || !(eps > 0.0)) {
        throw Error("invalid-parameter", "abel_majorant needs u > 0 and eps > 0");
    }
    if (a.empty() || a.size() != lambda.size()) {
        throw Error("invalid-polynomial", "coefficient/frequency prefix mismatch");
    }
    AbelCheck out;
    cplx lhs_sum(0, 0);
    cplx prefix(0, 0);
    for (std::size_t n = 0; n < a.size(); ++n) {
        lhs_sum += a[n] * std::exp(-(u + eps) * lambda[n]);
        prefix += a[n];
        out.rhs = std::max(out.rhs, std::exp(-eps * lambda[n]) * std::abs(prefix));
    }
    out.lhs = std::abs(lhs_sum);
    out.constant = 1.0 + 1.0 / (u * u);
    out.holds = out.lhs <= out.constant * out.rhs * (1.0 + 1e-12);
    return out;
}

namespace {

double flow_abs(const std::vector<double>& lambda, const std::vector<cplx>& coeffs, double t) {
    cplx acc(0, 0);
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        acc += coeffs[k] * unit_phase(-t * lambda[k]);
    }
    return std::abs(acc);
}

}  // namespace

double sup_flow(const std::vector<double>& lambda, const std::vector<cplx>& coeffs,
                const SupEstimator& opt, const GroupModel* model,
                const std::vector<std::size_t>* model_rows) {
    if (lambda.size() != coeffs.size()) {
        throw Error("invalid-polynomial", "coefficient/frequency prefix mismatch");
    }
    std::size_t g = std::max<std::size_t>(opt.grid, 3);
    if (g % 2 == 0) ++g;  // odd point count keeps t = 0 on the grid
    const double spacing = 2.0 * opt.t_max / static_cast<double>(g - 1);

    double best = 0.0;
    std::vector<std::pair<double, double>> top;  // (value, t), kept sorted desc, size <= 3
    for (std::size_t i = 0; i < g; ++i) {
        const double t = -opt.t_max + static_cast<double>(i) * spacing;
        const double v = flow_abs(lambda, coeffs, t);
        best = std::max(best, v);
        top.emplace_back(v, t);
        std::sort(top.begin(), top.end(),
                  [](const auto& x, const auto& y) { return x.first > y.first; });
        if (top.size() > 3) top.pop_back();
    }

    std::size_t rp = std::max<std::size_t>(opt.refine_points, 3);
    if (rp % 2 == 0) ++rp;
    for (auto [v0, center] : top) {
        double c = center;
        double h = spacing;
        for (int round = 0; round < opt.refine_rounds; ++round) {
            double local_best = v0;
            double local_t = c;
            for (std::size_t i = 0; i < rp; ++i) {
                const double t =
                    c - h + 2.0 * h * static_cast<double>(i) / static_cast<double>(rp - 1);
                const double v = flow_abs(lambda, coeffs, t);
                if (v > local_best) {
                    local_best = v;
                    local_t = t;
                }
            }
            best = std::max(best, local_best);
            c = local_t;
            h *= 2.0 / static_cast<double>(rp - 1);
        }
    }

    if (model != nullptr && model_rows != nullptr && opt.torus_samples > 0) {
        if (model_rows->size() != lambda.size()) {
            throw Error("model-mismatch", "torus probe rows do not match the prefix");
        }
        for (std::size_t i = 0; i < opt.torus_samples; ++i) {
            auto rng = task_rng(opt.seed, kStreamSupProbe, i);
            std::vector<double> theta(model->dim());
            for (auto& ang : theta) ang = rng.next_angle();
            cplx acc(0, 0);
            for (std::size_t k = 0; k < lambda.size(); ++k) {
                acc += coeffs[k] * model->character((*model_rows)[k], theta);
            }
            best = std::max(best, std::abs(acc));
        }
    }
    return best;
}

SigmaUEstimate sigma_u_estimate(const DirichletPolynomial& d, const SupEstimator& opt,
                                const GroupModel* model) {
    if (d.size() == 0) {
        throw Error("invalid-polynomial", "abscissa estimate needs at least one term");
    }
    const auto lambda = d.lambdas();

    // Geometric prefix checkpoints, always ending at the full length.
    std::vector<std::size_t> ends;
    {
        const std::size_t n0 = std::min<std::size_t>(2, d.size());
        double x = static_cast<double>(n0);
        const double ratio =
            d.size() > n0 ? std::pow(static_cast<double>(d.size()) / x, 1.0 / 15.0) : 1.0;
        for (int i = 0; i < 16; ++i) {
            auto n = static_cast<std::size_t>(std::llround(x));
            n = std::min(std::max<std::size_t>(n, 1), d.size());
            if (ends.empty() || n > ends.back()) ends.push_back(n);
            x *= ratio;
        }
        if (ends.back() != d.size()) ends.push_back(d.size());
    }

    SigmaUEstimate out;
    std::vector<std::size_t> rows;  // 0-based model rows for the torus probe
    if (model != nullptr) {
        for (auto n : d.indices) {
            if (n > model->size()) {
                throw Error("model-mismatch",
                            "term index " + std::to_string(n) + " beyond model rows");
            }
            rows.push_back(n - 1);
        }
    }
    for (auto n : ends) {
        const double lam_n = lambda[n - 1];
        if (lam_n <= 0.0) {
            out.notes.push_back("prefix N=" + std::to_string(n) +
                                " skipped: lambda_N = 0 makes the quotient undefined");
            continue;
        }
        std::vector<double> lam_prefix(lambda.begin(),
                                       lambda.begin() + static_cast<std::ptrdiff_t>(n));
        std::vector<cplx> coeff_prefix(d.coeffs.begin(),
                                       d.coeffs.begin() + static_cast<std::ptrdiff_t>(n));
        std::vector<std::size_t> row_prefix;
        if (model != nullptr) {
            row_prefix.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n));
        }
        const double sup = sup_flow(lam_prefix, coeff_prefix, opt, model,
                                    model != nullptr ? &row_prefix : nullptr);
        if (sup <= 0.0) {
            out.notes.push_back("prefix N=" + std::to_string(n) +
                                " skipped: zero partial sum on every probe");
            continue;
        }
        out.trend.push_back({static_cast<std::int64_t>(n), std::log(sup) / lam_n});
    }
    if (out.trend.empty()) {
        throw Error("undefined-abscissa", "no prefix end with lambda_N > 0");
    }
    // limsup proxy: sup over the tail half of the recorded trend
    const std::size_t start = out.trend.size() / 2;
    out.estimate = out.trend[start].value;
    for (std::size_t i = start; i < out.trend.size(); ++i) {
        out.estimate = std::max(out.estimate, out.trend[i].value);
    }
    if (d.size() == 1) {
        out.notes.push_back("single term: no growth, estimate is log|a_1|/lambda_1");
    }
    return out;
}

DirichletPolynomial abschnitt(const DirichletPolynomial& d, const BasisDecomposition& decomp,
                              std::size_t n_cols) {
    DirichletPolynomial out;
    out.freq = d.freq;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const std::size_t n = d.indices[k];
        if (n > decomp.rows.size()) {
            throw Error("model-mismatch",
                        "term index " + std::to_string(n) + " beyond decomposition rows");
        }
        const auto& row = decomp.rows[n - 1];
        bool supported = true;
        for (std::size_t j = n_cols; j < row.size(); ++j) {
            if (row[j] != 0) {
                supported = false;
                break;
            }
        }
        if (supported) {
            out.indices.push_back(n);
            out.coeffs.push_back(d.coeffs[k]);
        }
    }
    return out;
}

}  // namespace dlab
