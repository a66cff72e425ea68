#pragma once

// Monte Carlo diagnostic for vertical-limit convergence.  For sampled
// characters chi the twisted partial sums
//     S_N = sum_{n <= N} a_n chi_n e^{-lambda_n sigma},   sigma > 0 fixed,
// are probed through their dyadic increment moduli |S_{2N} - S_N| (computed
// directly as block sums over (N, 2N], so blocks past the support of the
// coefficients are exactly zero).
//
// Character schemes, chosen by frequency kind:
//   log(n)        multiplicative — i.i.d. uniform unimodular values at the
//                 primes, extended completely multiplicatively; exact for
//                 the ordinary case.
//   n             circle — a single uniform angle theta, chi_n = e^{i(n-1)theta}.
//   listed        basis — numeric basis decomposition of the prefix, uniform
//                 angles per basis column, chi_n = e^{i<R_n, theta>}; this
//                 respects whatever rational relations the decomposition
//                 finds in the listed values.
//   sqrt(log(n)), log(log(n))
//                 independent — one i.i.d. uniform phase per term (the
//                 generic decomposition of a relation-free prefix); tagged
//                 "diagnostic only" in the notes.
//
// Paths are embarrassingly parallel with split seeds; medians are assembled
// serially, so results are bit-identical across thread counts.

#include <cstdint>
#include <string>
#include <vector>

#include "dlab/common.hpp"
#include "dlab/frequency.hpp"
#include "dlab/parallel.hpp"
#include "dlab/rng.hpp"

namespace dlab {

struct HelsonSummary {
    std::vector<std::int64_t> block_start;             // N; block j covers (N, 2N]
    std::vector<std::vector<double>> path_increments;  // [path][block] = |S_{2N} - S_N|
    std::vector<double> median_increment;              // per block, across paths
    std::vector<double> mean_increment;                // per block, across paths
    std::string scheme;
    std::vector<std::string> notes;
};

// coeffs holds a_1..a_N (N = coeffs.size()); sigma > 0 ("invalid-abscissa"
// otherwise); paths >= 1.  basis_tau is the relation-detection tolerance used
// only for listed frequencies.
HelsonSummary helson_simulate(const Frequency& freq, const std::vector<cplx>& coeffs,
                              double sigma, std::size_t paths, std::uint64_t seed,
                              Exec exec = default_exec(), double basis_tau = 1e-14);

}  // namespace dlab
