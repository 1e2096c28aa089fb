#pragma once

#include "funcmodel/linalg.hpp"

namespace funcmodel {

/// Nodes on the real axis obtained from a uniform grid on the circle through
/// the Cayley map: theta_j = -pi + (j + 1/2) 2 pi / N, k_j = L tan(theta_j / 2),
/// with quadrature weights w_j = pi (L^2 + k_j^2) / (N L).
struct AxisGrid {
  int n = 2048;
  double scale = 1.0;
  RVector k;
  RVector w;

  /// N must be a power of two >= 256 and L > 0.
  static AxisGrid cayley(int n, double scale = 1.0);
};

/// E-valued functions on an AxisGrid are stored as N x r matrices, one row
/// per node.
using GridFunction = CMatrix;

/// sum_j w_j <f_j, g_j>
cplx grid_inner(const AxisGrid& grid, const GridFunction& f, const GridFunction& g);
double grid_norm(const AxisGrid& grid, const GridFunction& f);

/// Orthogonal projections onto H2+ and H2-. (L - ik) f is expanded in
/// e^{i n theta}; nonnegative n span H2+ and negative n span H2-. The
/// projections are exact for rational functions with poles only at +-iL.
class HardyProjector {
 public:
  enum class Method { FftMultiplier };

  explicit HardyProjector(AxisGrid grid, Method method = Method::FftMultiplier);

  const AxisGrid& grid() const { return grid_; }
  Method method() const { return method_; }

  GridFunction project(int sign, const GridFunction& f) const;

  /// Circle coefficients a_n of (L - ik) f for one column; index n at
  /// position n mod N.
  CVector coefficients(const CVector& column) const;

  /// Analytic continuation into C+ (sign > 0) or C- (sign < 0) from the
  /// circle coefficients of the matching half of f.
  CVector continue_series(int sign, const GridFunction& f, cplx z) const;

 private:
  AxisGrid grid_;
  Method method_;
};

GridFunction hardy_project(const HardyProjector& proj, int sign, const GridFunction& f);

/// Cauchy integral +-(1/2 pi i) sum_j w_j f_j / (k_j - z), which reproduces
/// an H2+ function at z in C+ (sign > 0) or an H2- function at z in C- (sign < 0).
CVector hardy_continue(const AxisGrid& grid, int sign, const GridFunction& f, cplx z);

/// Share of the weighted mass of f carried by the outer 5% of circle nodes
/// (those nearest k = +-infinity).
double edge_mass_fraction(const AxisGrid& grid, const GridFunction& f);

}  // namespace funcmodel
