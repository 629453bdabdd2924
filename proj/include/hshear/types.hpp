#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hshear {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Raised for invalid parameters: non-unimodular rotations, excluded
/// lambda values, Blaschke zeros outside the allowed radius, ...
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs within this distance of the unit circle are renormalized.
inline constexpr double kUnimodularSlack = 1e-9;

/// Returns `x / |x|` when `||x| - 1| <= 1e-9`; throws DomainError otherwise.
cplx unimodular(cplx x, const std::string& what);

inline cplx polar1(double angle) { return std::polar(1.0, angle); }

}  // namespace hshear
