#pragma once

// Invariance residual against a finite family of test functions:
//   max_phi | int phi dmu - int phi o T dmu |.

#include <cstddef>
#include <vector>

#include "itm/itm_map.hpp"
#include "itm/measure.hpp"
#include "itm/piecewise.hpp"

namespace itm {

struct TestFamily {
  enum class Kind { trigonometric, monomial };
  Kind kind = Kind::trigonometric;
  std::size_t degree = 8;

  /// cos(2 pi k x), sin(2 pi k x) for k = 1..degree.
  static TestFamily trigonometric(std::size_t degree) { return {Kind::trigonometric, degree}; }
  /// x^k for k = 1..degree (mod-1 representative on the circle).
  static TestFamily monomial(std::size_t degree) { return {Kind::monomial, degree}; }
};

struct FunctionalResidual {
  double residual = 0.0;              // max over the family
  std::vector<double> per_function;   // trig: cos_1, sin_1, cos_2, ...; monomial: x, x^2, ...
};

/// Density integrals use exact rational endpoints. Trigonometric values are
/// evaluated in floating point through the trig_sums kernel; monomials on
/// affine maps are integrated exactly and rounded once at the end. General
/// pieces fall back to Gauss-Legendre quadrature.
FunctionalResidual invariance_residual_functional(const PiecewiseMap& map, const Measure& mu, const TestFamily& family);
FunctionalResidual invariance_residual_functional(const Itm& map, const Measure& mu, const TestFamily& family);

}  // namespace itm
