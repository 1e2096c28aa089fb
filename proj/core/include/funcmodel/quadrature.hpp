#pragma once

#include <span>

#include "funcmodel/linalg.hpp"

namespace funcmodel {

struct QuadratureRule {
  RVector nodes;    // strictly increasing
  RVector weights;  // strictly positive
};

/// n-point Gauss-Legendre rule on [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

/// Barycentric interpolation through Gauss-Legendre nodes. The weights are
/// (-1)^j sqrt((1 - t_j^2) w_j) in reference coordinates, so the node values
/// are interpreted as samples of the degree n-1 interpolating polynomial.
class LegendreInterpolant {
 public:
  explicit LegendreInterpolant(const QuadratureRule& rule, double lo, double hi);

  /// Value at x of the interpolant through the given node values.
  cplx operator()(std::span<const cplx> values, double x) const;

  /// Interpolation row: value(x) = row(x) . values.
  RVector row(double x) const;

  /// Derivative row: value'(x) = derivative_row(x) . values.
  RVector derivative_row(double x) const;

 private:
  RVector nodes_;
  RVector bary_;
};

}  // namespace funcmodel
