// Dirichlet polynomial checks: construction, translation and twisting
// identities, Riesz means, the Abel-summation majorant, the
// uniform-convergence abscissa estimate, and basis-column restriction.
#include <cmath>
#include <complex>
#include <vector>

#include "dlab/basis.hpp"
#include "dlab/rng.hpp"
#include "dlab/series.hpp"
#include "doctest.h"

using namespace dlab;

namespace {

DirichletPolynomial log_poly(std::size_t n) {
    std::vector<cplx> c;
    for (std::size_t k = 1; k <= n; ++k) {
        c.emplace_back(1.0 / static_cast<double>(k), 0.1 * static_cast<double>(k % 3));
    }
    return DirichletPolynomial::dense(Frequency::parse("log(n)"), std::move(c));
}

}  // namespace

TEST_CASE("construction merges duplicates and validates indices") {
    auto f = Frequency::parse("n");
    DirichletPolynomial d(f, {3, 1, 3}, {cplx(1, 0), cplx(2, 0), cplx(0, 1)});
    REQUIRE(d.size() == 2);
    CHECK(d.indices == std::vector<std::size_t>{1, 3});
    CHECK(d.coeffs[1] == cplx(1, 1));
    CHECK(d.lambda(1) == 2.0);  // frequency rule "n" has entries k - 1

    CHECK_THROWS_AS(DirichletPolynomial(f, {0}, {cplx(1, 0)}), Error);
    CHECK_THROWS_AS(DirichletPolynomial(f, {1, 2}, {cplx(1, 0)}), Error);

    const auto p = partial_sum(d, 1);
    CHECK(p.size() == 1);
    CHECK(p.indices[0] == 1);
}

TEST_CASE("translate shifts the argument") {
    const auto d = log_poly(6);
    const cplx z(0.4, -0.7);
    const auto shifted = translate(d, z);
    for (cplx s : {cplx(0.2, 0.3), cplx(-0.1, 1.0)}) {
        CHECK(std::abs(shifted.eval(s) - d.eval(s + z)) < 1e-12);
    }
}

TEST_CASE("vertical limit along the flow is a vertical translation") {
    const auto d = log_poly(8);
    const auto model = ordinary_model(8);
    const double t = 1.1;
    const auto twisted = vertical_limit(d, model, model.flow_angles(t));
    const cplx s(0.3, 0.2);
    CHECK(std::abs(twisted.eval(s) - d.eval(s + cplx(0.0, t))) < 1e-12);

    CHECK_THROWS_AS(vertical_limit(d, ordinary_model(3), std::vector<double>(2, 0.0)), Error);
    CHECK_THROWS_AS(vertical_limit(d, model, std::vector<double>(1, 0.0)), Error);
}

TEST_CASE("torus push-forward evaluates like the boundary restriction") {
    const auto d = log_poly(8);
    const auto model = ordinary_model(8);
    const auto f = to_torus_polynomial(d, model);
    for (double t : {0.0, 0.9, 17.3}) {
        CHECK(std::abs(f.eval(model.flow_angles(t)) - d.eval(cplx(0.0, t))) < 1e-11);
    }
    CHECK_THROWS_AS(to_torus_polynomial(d, ordinary_model(3)), Error);
}

TEST_CASE("riesz mean keeps lambda < x strictly and applies the weight") {
    auto f = Frequency::parse("n");  // entries 0, 1, 2, ...
    const auto d = DirichletPolynomial::dense(f, {cplx(1, 0), cplx(1, 0), cplx(1, 0)});
    const auto r = riesz_mean(d, 2.0, 1.0);
    REQUIRE(r.size() == 2);  // the tie lambda_3 = 2 is excluded
    CHECK(r.coeffs[0] == cplx(1, 0));
    CHECK(r.coeffs[1].real() == doctest::Approx(0.5).epsilon(1e-15));

    const auto r0 = riesz_mean(d, 2.5, 0.0);
    REQUIRE(r0.size() == 3);
    CHECK(r0.coeffs[2] == cplx(1, 0));

    CHECK_THROWS_AS(riesz_mean(d, 0.0, 1.0), Error);
    CHECK_THROWS_AS(riesz_mean(d, 1.0, -0.5), Error);
}

TEST_CASE("abel majorant: single-term closed form") {
    const double u = 0.7;
    const double eps = 0.3;
    const double lam = 1.9;
    const cplx a(1.5, -2.0);
    const auto chk = abel_majorant({a}, {lam}, u, eps);
    CHECK(chk.lhs == doctest::Approx(std::abs(a) * std::exp(-(u + eps) * lam)).epsilon(1e-14));
    CHECK(chk.rhs == doctest::Approx(std::abs(a) * std::exp(-eps * lam)).epsilon(1e-14));
    CHECK(chk.constant == doctest::Approx(1.0 + 1.0 / (u * u)).epsilon(1e-15));
    CHECK(chk.holds);
}

TEST_CASE("abel majorant holds on random prefixes") {
    auto f = Frequency::parse("n");
    std::size_t violations = 0;
    for (std::size_t trial = 0; trial < 200; ++trial) {
        auto rng = task_rng(kDefaultSeed, kStreamAbel, trial);
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_double() * 30.0);
        std::vector<cplx> a;
        std::vector<double> lam;
        for (std::size_t k = 1; k <= n; ++k) {
            const auto [g1, g2] = rng.next_gauss_pair();
            a.emplace_back(g1, g2);
            lam.push_back(f.entry(static_cast<std::int64_t>(k)));
        }
        const auto chk = abel_majorant(a, lam, 1.0, 1.0);
        if (!chk.holds) ++violations;
    }
    CHECK(violations == 0);

    CHECK_THROWS_AS(abel_majorant({}, {}, 1.0, 1.0), Error);
    CHECK_THROWS_AS(abel_majorant({cplx(1, 0)}, {0.0}, 0.0, 1.0), Error);
    CHECK_THROWS_AS(abel_majorant({cplx(1, 0)}, {0.0, 1.0}, 1.0, 1.0), Error);
}

TEST_CASE("uniform-convergence abscissa of sum n^{-it} prefixes is exactly 1") {
    // With a_n = 1 and lambda = log n, the flow sup of every prefix is
    // attained at t = 0 where the partial sum is exactly N, so the statistic
    // log(sup)/lambda_N collapses to log(N)/log(N) = 1 bit for bit.
    std::vector<cplx> ones(64, cplx(1.0, 0.0));
    const auto d = DirichletPolynomial::dense(Frequency::parse("log(n)"), std::move(ones));
    SupEstimator opt;
    opt.t_max = 40.0;
    opt.grid = 801;
    const auto est = sigma_u_estimate(d, opt);
    REQUIRE(!est.trend.empty());
    for (const auto& pt : est.trend) {
        CHECK(pt.value == 1.0);
    }
    CHECK(est.estimate == 1.0);
}

TEST_CASE("abscissa estimate with a torus probe stays exact") {
    std::vector<cplx> ones(16, cplx(1.0, 0.0));
    const auto d = DirichletPolynomial::dense(Frequency::parse("log(n)"), std::move(ones));
    const auto model = ordinary_model(16);
    SupEstimator opt;
    opt.grid = 401;
    opt.torus_samples = 50;
    const auto est = sigma_u_estimate(d, opt, &model);
    CHECK(est.estimate == 1.0);
}

TEST_CASE("abscissa estimate rejects prefixes without positive frequencies") {
    const auto d =
        DirichletPolynomial(Frequency::parse("log(n)"), {1}, {cplx(2, 0)});  // lambda_1 = 0
    SupEstimator opt;
    CHECK_THROWS_AS(sigma_u_estimate(d, opt), Error);
    try {
        sigma_u_estimate(d, opt);
    } catch (const Error& e) {
        CHECK(e.code() == "undefined-abscissa");
    }
}

TEST_CASE("single-term abscissa carries the closed-form value") {
    const auto d = DirichletPolynomial(Frequency::parse("n"), {3}, {cplx(2, 0)});  // lambda = 2
    SupEstimator opt;
    const auto est = sigma_u_estimate(d, opt);
    CHECK(est.estimate == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-12));
    bool noted = false;
    for (const auto& n : est.notes) noted = noted || n.find("single term") != std::string::npos;
    CHECK(noted);
}

TEST_CASE("column restriction keeps exactly the supported rows") {
    std::vector<double> values;
    for (int n = 1; n <= 8; ++n) values.push_back(std::log(static_cast<double>(n)));
    const auto decomp = decompose_basis_numeric(values, 1e-9);
    REQUIRE(decomp.basis.size() == 4);  // log 2, 3, 5, 7

    std::vector<cplx> ones(8, cplx(1.0, 0.0));
    const auto d = DirichletPolynomial::dense(Frequency::parse("log(n)"), std::move(ones));

    const auto one_col = abschnitt(d, decomp, 1);
    CHECK(one_col.indices == std::vector<std::size_t>{1, 2, 4, 8});
    const auto two_cols = abschnitt(d, decomp, 2);
    CHECK(two_cols.indices == std::vector<std::size_t>{1, 2, 3, 4, 6, 8});
    const auto all_cols = abschnitt(d, decomp, decomp.basis.size());
    CHECK(all_cols.indices == d.indices);
    for (std::size_t k = 0; k < d.size(); ++k) {
        CHECK(all_cols.coeffs[k] == d.coeffs[k]);
    }

    BasisDecomposition tiny;
    tiny.basis = decomp.basis;
    tiny.rows = {decomp.rows[0]};
    CHECK_THROWS_AS(abschnitt(d, tiny, 1), Error);
}
