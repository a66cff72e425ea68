// Serial vs OpenMP timing for the three Monte Carlo hot loops.  Both paths
// produce bit-identical numbers (per-sample buffers, serial reduction), so the
// printed speedup is the only thing that differs between machines.  With
// --smoke the sample counts shrink to a CI-friendly size.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "dlab/group.hpp"
#include "dlab/helson.hpp"
#include "dlab/maximal.hpp"
#include "dlab/series.hpp"

using namespace dlab;

namespace {

template <typename F>
double time_of(F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void print_row(const char* name, double serial_s, double openmp_s, bool identical) {
    std::printf("%-24s serial %8.3fs   openmp %8.3fs   speedup %5.2fx   identical %s\n", name,
                serial_s, openmp_s, openmp_s > 0.0 ? serial_s / openmp_s : 0.0,
                identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    bool smoke = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--smoke") == 0) smoke = true;
    }
    const std::size_t mc_samples = smoke ? 5000 : 200000;
    const std::size_t paths = smoke ? 20 : 400;
    const std::int64_t n_max = smoke ? 4096 : 32768;

    // shared fixtures
    auto rng = task_rng(kDefaultSeed, kStreamCoefficients, 90000);
    std::vector<cplx> coeffs(16);
    for (auto& c : coeffs) {
        const auto g = rng.next_gauss_pair();
        c = cplx(g[0], g[1]);
    }
    const GroupModel model = ordinary_model(16);
    const DirichletPolynomial d =
        DirichletPolynomial::dense(Frequency::parse("log(n)"), coeffs);
    const TorusPolynomial f = to_torus_polynomial(d, model);

    std::printf("bench (%s): samples=%zu paths=%zu n_max=%lld\n", smoke ? "smoke" : "full",
                mc_samples, paths, static_cast<long long>(n_max));

    {
        const std::vector<double> x{1.0, 0.5, 1.0 / 3.0, 0.2, 1.5, 2.0};
        MaximalEstimate a;
        MaximalEstimate b;
        const double ts = time_of([&] {
            a = carleson_norm_mc(f, x, 2.0, mc_samples, 1, nullptr, Exec::serial);
        });
        const double tp = time_of([&] {
            b = carleson_norm_mc(f, x, 2.0, mc_samples, 1, nullptr, Exec::openmp);
        });
        print_row("carleson_norm_mc", ts, tp,
                  a.estimate == b.estimate && a.std_error == b.std_error);
    }
    {
        NormBudget budget;
        budget.samples = mc_samples;
        NormEstimate a;
        NormEstimate b;
        const double ts = time_of([&] {
            a = lp_norm(model, f, 4.0, NormMethod::haar_mc, budget, 2, Exec::serial);
        });
        const double tp = time_of([&] {
            b = lp_norm(model, f, 4.0, NormMethod::haar_mc, budget, 2, Exec::openmp);
        });
        print_row("lp_norm haar p=4", ts, tp, a.value == b.value && a.std_error == b.std_error);
    }
    {
        std::vector<cplx> helson_coeffs(static_cast<std::size_t>(n_max));
        for (std::int64_t n = 1; n <= n_max; ++n) {
            helson_coeffs[static_cast<std::size_t>(n - 1)] =
                cplx(std::pow(static_cast<double>(n), -0.75), 0.0);
        }
        HelsonSummary a;
        HelsonSummary b;
        const double ts = time_of([&] {
            a = helson_simulate(Frequency::parse("log(n)"), helson_coeffs, 0.05, paths, 3,
                                Exec::serial);
        });
        const double tp = time_of([&] {
            b = helson_simulate(Frequency::parse("log(n)"), helson_coeffs, 0.05, paths, 3,
                                Exec::openmp);
        });
        print_row("helson_simulate", ts, tp, a.path_increments == b.path_increments);
    }
    return 0;
}
