#pragma once
// Shared small utilities: error type with stable machine-readable codes,
// numeric helpers used across modules.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace dlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// All library failures throw Error. `code` is a stable, hyphenated token that
// the CLI maps to exit status 2 (validation/usage) and that tests match on;
// `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// sin(x)/x with the removable singularity filled in (second-order series near 0).
inline double sinc(double x) {
    if (std::fabs(x) < 1e-6) {
        return 1.0 - x * x / 6.0;
    }
    return std::sin(x) / x;
}

// exp(i*theta) without going through std::polar's magnitude multiply.
inline cplx unit_phase(double theta) {
    return cplx(std::cos(theta), std::sin(theta));
}

inline double sqr(double x) { return x * x; }

}  // namespace dlab
