#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "dlab/frequency.hpp"

using namespace dlab;

namespace {

// Independent oracle for the infimum of gap * exp(weight(lambda_n)) over a
// short prefix, computed directly in plain arithmetic (no log-space tricks).
double brute_gap_infimum(const Frequency& f, std::int64_t N, double coeff) {
    double inf = std::numeric_limits<double>::infinity();
    for (std::int64_t n = 1; n < N; ++n) {
        const double gap = f.entry(n + 1) - f.entry(n);
        inf = std::min(inf, gap * std::exp(coeff * f.entry(n)));
    }
    return inf;
}

}  // namespace

TEST_CASE("rule frequencies produce the advertised sequences") {
    const Frequency logn = Frequency::parse("log(n)");
    CHECK(logn.entry(1) == 0.0);
    CHECK(logn.entry(2) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(logn.kind() == Frequency::Kind::log_n);

    const Frequency nn = Frequency::parse("n");
    CHECK(nn.entry(1) == 0.0);
    CHECK(nn.entry(5) == 4.0);

    const Frequency sq = Frequency::parse(" sqrt( log( n ) ) ");  // whitespace stripped
    CHECK(sq.entry(4) == doctest::Approx(std::sqrt(std::log(4.0))));

    const Frequency ll = Frequency::parse("log(log(n))");
    // index shift: entry(1) = log log 3 > 0
    CHECK(ll.entry(1) == doctest::Approx(std::log(std::log(3.0))));
    CHECK(ll.entry(1) > 0.0);
}

TEST_CASE("listed frequencies validate monotonicity and range") {
    CHECK_NOTHROW(Frequency::from_values({0.0, 0.5, 1.25}));
    try {
        Frequency::from_values({0.0, 0.5, 0.5});
        CHECK(false);  // must throw
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("strictly increase") != std::string::npos);
        CHECK(e.code() == "invalid-frequency");
    }
    CHECK_THROWS_AS(Frequency::from_values({-1.0, 0.5}), Error);
    CHECK_THROWS_AS(Frequency::from_values({}), Error);

    const Frequency f = Frequency::from_values({0.0, 1.0, 2.5});
    CHECK(f.max_index() == 3);
    CHECK_THROWS_AS(f.entry(4), Error);
    CHECK_THROWS_AS(f.entry(0), Error);
}

TEST_CASE("frequency file loading handles comments and rejects junk") {
    const char* path = "freq_values_test.txt";
    {
        std::ofstream out(path);
        out << "# header comment\n0.0\n0.7  # inline\n\n1.9\n";
    }
    const Frequency f = Frequency::parse(std::string("file:") + path);
    CHECK(f.max_index() == 3);
    CHECK(f.entry(2) == 0.7);
    std::remove(path);

    CHECK_THROWS_AS(Frequency::parse("file:/nonexistent/nada.txt"), Error);
    CHECK_THROWS_AS(Frequency::parse("exp(n)"), Error);
}

TEST_CASE("bohr gap check on log(n): infimum at the first gap") {
    // Oracle first: gaps log((n+1)/n) shrink like 1/n while the weight
    // exp(1.1 log n) = n^1.1 grows, so the statistic rises ~ n^0.1 and the
    // infimum sits at n = 1 with value log(2) * exp(0) = log 2.
    const Frequency f = Frequency::parse("log(n)");
    const double oracle = brute_gap_infimum(f, 64, 1.1);
    CHECK(oracle == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    const ConditionReport rep = check_bohr_gap(f, 1.0, 0.1, 4096);
    CHECK(rep.condition == "BC");
    CHECK(rep.witness == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(rep.witness_index == 1);
    CHECK(rep.verdict == Verdict::evidence_holds);
    CHECK(rep.trend.size() >= 8);
    CHECK(rep.trend.back().n == 4096);
    // running infimum is nonincreasing along the trend
    for (std::size_t i = 1; i < rep.trend.size(); ++i) {
        CHECK(rep.trend[i].value <= rep.trend[i - 1].value + 1e-15);
    }
}

TEST_CASE("bohr gap check fails on sqrt(log(n)) evidence") {
    // gap ~ 1/(2 n sqrt(log n)) vanishes faster than exp(1.1 sqrt(log n))
    // grows, so the statistic slides to zero.
    const ConditionReport rep = check_bohr_gap(Frequency::parse("sqrt(log(n))"), 1.0, 0.1, 20000);
    CHECK(rep.verdict == Verdict::evidence_fails);
}

TEST_CASE("landau gap check holds on sqrt(log(n)) and fails on log(log(n))") {
    const ConditionReport holds = check_landau_gap(Frequency::parse("sqrt(log(n))"), 1.0, 20000);
    CHECK(holds.condition == "LC");
    CHECK(holds.verdict == Verdict::evidence_holds);

    const ConditionReport fails = check_landau_gap(Frequency::parse("log(log(n))"), 1.0, 200000);
    CHECK(fails.verdict == Verdict::evidence_fails);
}

TEST_CASE("landau gap check holds trivially for lambda = n") {
    const ConditionReport rep = check_landau_gap(Frequency::parse("n"), 0.5, 2048);
    CHECK(rep.verdict == Verdict::evidence_holds);
    // unit gaps, weight >= 1: witness is the first statistic, gap * e^{e^0} = e
    CHECK(rep.log_witness == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gap checks validate their parameters") {
    const Frequency f = Frequency::parse("log(n)");
    CHECK_THROWS_AS(check_bohr_gap(f, 0.0, 0.1, 100), Error);
    CHECK_THROWS_AS(check_bohr_gap(f, 1.0, 0.0, 100), Error);
    CHECK_THROWS_AS(check_bohr_gap(f, 1.0, 0.1, 1), Error);
    CHECK_THROWS_AS(check_landau_gap(f, -1.0, 100), Error);
}

TEST_CASE("L-value of log(n) is exactly 1 and stable") {
    // log(n)/lambda_n = 1 for every n >= 2, identically.
    const ConditionReport rep = l_value(Frequency::parse("log(n)"), 4096);
    CHECK(rep.condition == "L");
    CHECK(rep.witness == 1.0);  // same double divided by itself
    CHECK(rep.verdict == Verdict::evidence_holds);
    CHECK(rep.diverging == false);
}

TEST_CASE("L-value diverges for sqrt(log(n)) and stays finite for n") {
    const ConditionReport div = l_value(Frequency::parse("sqrt(log(n))"), 20000);
    CHECK(div.diverging == true);
    CHECK(div.verdict == Verdict::evidence_fails);
    // ratio log n / sqrt(log n) = sqrt(log n); check the witness matches
    CHECK(div.witness == doctest::Approx(std::sqrt(std::log(20000.0))).epsilon(1e-3));

    const ConditionReport fin = l_value(Frequency::parse("n"), 4096);
    CHECK(fin.diverging == false);
    CHECK(fin.verdict == Verdict::evidence_holds);
    CHECK(fin.witness < 0.01);  // log n/(n-1) is tiny on the trailing half
}

TEST_CASE("L-value skips lambda = 0 entries with a note") {
    const ConditionReport rep = l_value(Frequency::parse("log(n)"), 64);
    bool noted = false;
    for (const auto& note : rep.notes) {
        if (note.find("skipped") != std::string::npos) noted = true;
    }
    CHECK(noted);
}
