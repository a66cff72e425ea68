#pragma once
// Integer-coefficient basis extraction for finite frequency prefixes.
//
// Given values lambda_1, ..., lambda_M (nonnegative reals), produce
//   * a finite list of basis reals b_1, ..., b_P that are Q-linearly
//     independent (declared in symbolic mode, heuristic in numeric mode), and
//   * an integer matrix R ("Bohr matrix") with lambda_n = sum_j R[n][j] b_j.
//
// Construction is the classical induction: keep a Q-independent basis; when a
// new value is a rational combination sum_j q_j b_j, rescale the whole basis
// by 1/K with K = lcm of the q_j denominators (all previous rows pick up a
// factor K, which keeps them integral) and append the integer row K*q;
// when the new value is independent, append it as a fresh basis element.
//
// Two exactness modes:
//   symbolic  — every input value is a declared exact rational combination of
//               named irrationals that the caller asserts are Q-independent;
//               all linear algebra is exact rational arithmetic, so the rows
//               are certified relative to that declaration.
//   numeric   — dependence is probed with an LLL-based integer-relation
//               search at a user tolerance tau. Never rigorous: a miss
//               declares independence, an ambiguous hit (residual in
//               (tau, 10*tau]) raises an error carrying the offending index.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "dlab/common.hpp"

namespace dlab {

using Rational = boost::rational<long long>;

struct SymbolicInput {
    // Names and numeric values of the declared Q-independent generators.
    std::vector<std::string> symbols;
    std::vector<double> symbol_values;
    // One coordinate vector per frequency value: value = sum_s coords[s] * symbol_s.
    std::vector<std::vector<Rational>> value_coords;
};

struct BasisDecomposition {
    bool exact = false;  // true only in symbolic mode
    std::vector<std::string> symbols;             // symbolic mode only
    std::vector<double> symbol_values;            // symbolic mode only
    std::vector<std::vector<Rational>> basis_coords;  // symbolic: basis over symbols
    std::vector<double> basis;                    // numeric basis values b_j
    std::vector<std::vector<long long>> rows;     // R: rows[n][j], one row per input value
    std::vector<std::string> notes;

    double reconstruct(std::size_t n) const;  // sum_j rows[n][j] * basis[j]
};

// Exact mode. Throws Error("invalid-relations") on shape mismatches and
// Error("basis-overflow") if a rescale would overflow 64-bit row entries.
BasisDecomposition decompose_basis(const SymbolicInput& input);

// Heuristic mode at tolerance tau > 0. Throws Error("relation-inconclusive")
// with the ambiguous 1-based value index in the message when the relation
// search lands in (tau, 10*tau], and Error("relation-degenerate") if a
// relation among existing basis values themselves shows up (tau too loose).
BasisDecomposition decompose_basis_numeric(const std::vector<double>& values, double tau);

// Textbook floating-point LLL on integer row vectors (delta = 0.99),
// exposed for tests. Reduces in place.
void lll_reduce(std::vector<std::vector<double>>& basis_float,
                std::vector<std::vector<long long>>& basis_int, double delta = 0.99);

}  // namespace dlab
