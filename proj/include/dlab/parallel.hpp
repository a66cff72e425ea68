#pragma once
// Execution policy for the data-parallel kernels.
//
// Pattern used throughout: a kernel evaluates an independent value per index
// (one Monte Carlo sample, one grid point, one character path) and writes it
// into its own slot of a preallocated buffer; any reduction over the buffer
// happens serially afterwards. Consequences:
//   * Exec::serial and Exec::openmp produce bit-identical buffers (per-index
//     work depends only on the index and the master seed), so the serial
//     reference path is directly comparable in tests;
//   * no OpenMP reduction clauses, hence no thread-count-dependent summation
//     order anywhere.

#include <cstddef>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace dlab {

enum class Exec {
    serial,  // plain loop — the reference implementation
    openmp,  // OpenMP static schedule (falls back to serial when built without OpenMP)
};

inline Exec default_exec() {
#if defined(_OPENMP)
    return Exec::openmp;
#else
    return Exec::serial;
#endif
}

inline bool openmp_compiled() {
#if defined(_OPENMP)
    return true;
#else
    return false;
#endif
}

// Calls f(i) for i in [0, n). f must only write state owned by index i.
template <class F>
void parallel_fill(std::size_t n, Exec exec, F&& f) {
#if defined(_OPENMP)
    if (exec == Exec::openmp) {
        const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < nn; ++i) {
            f(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) {
        f(i);
    }
}

}  // namespace dlab
