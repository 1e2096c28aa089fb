#include "funcmodel/hardy.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace funcmodel {

AxisGrid AxisGrid::cayley(int n, double scale) {
  if (n < 256 || (n & (n - 1)) != 0) {
    throw InputError("grid size must be a power of two >= 256");
  }
  if (!(scale > 0.0)) throw InputError("grid scale must be positive");
  AxisGrid g;
  g.n = n;
  g.scale = scale;
  g.k.resize(n);
  g.w.resize(n);
  const double pi = std::numbers::pi;
  for (int j = 0; j < n; ++j) {
    const double theta = -pi + (j + 0.5) * 2.0 * pi / n;
    const double k = scale * std::tan(0.5 * theta);
    g.k(j) = k;
    g.w(j) = pi * (scale * scale + k * k) / (n * scale);
  }
  return g;
}

cplx grid_inner(const AxisGrid& grid, const GridFunction& f, const GridFunction& g) {
  if (f.rows() != grid.n || g.rows() != grid.n || f.cols() != g.cols()) {
    throw InputError("grid function mismatch");
  }
  cplx acc = 0.0;
  for (int j = 0; j < grid.n; ++j) acc += grid.w(j) * f.row(j).dot(g.row(j));
  return acc;
}

double grid_norm(const AxisGrid& grid, const GridFunction& f) {
  return std::sqrt(std::max(0.0, grid_inner(grid, f, f).real()));
}

HardyProjector::HardyProjector(AxisGrid grid, Method method)
    : grid_(std::move(grid)), method_(method) {}

CVector HardyProjector::coefficients(const CVector& column) const {
  const int n = grid_.n;
  const double pi = std::numbers::pi;
  const double h = 2.0 * pi / n;
  std::vector<cplx> in(n), out;
  for (int j = 0; j < n; ++j) in[j] = cplx(grid_.scale, -grid_.k(j)) * column(j);
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  CVector a(n);
  for (int idx = 0; idx < n; ++idx) {
    const int m = idx < n / 2 ? idx : idx - n;
    // theta_j = -pi + (j + 1/2) h
    a(idx) = out[idx] * std::exp(cplx(0.0, m * (pi - 0.5 * h))) / static_cast<double>(n);
  }
  return a;
}

GridFunction HardyProjector::project(int sign, const GridFunction& f) const {
  const int n = grid_.n;
  if (f.rows() != n) throw InputError("grid function does not match the projector");
  GridFunction out(n, f.cols());
  Eigen::FFT<double> fft;
  std::vector<cplx> in(n), spec, back;
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    for (int j = 0; j < n; ++j) in[j] = cplx(grid_.scale, -grid_.k(j)) * f(j, c);
    fft.fwd(spec, in);
    for (int idx = 0; idx < n; ++idx) {
      const bool plus = idx < n / 2;
      if (plus != (sign > 0)) spec[idx] = 0.0;
    }
    fft.inv(back, spec);
    for (int j = 0; j < n; ++j) out(j, c) = back[j] / cplx(grid_.scale, -grid_.k(j));
  }
  return out;
}

CVector HardyProjector::continue_series(int sign, const GridFunction& f, cplx z) const {
  if ((sign > 0) != (z.imag() > 0.0) || z.imag() == 0.0) {
    throw DomainError("series continuation: z in the wrong half-plane");
  }
  const int n = grid_.n;
  const cplx ell(grid_.scale, 0.0);
  const cplx wz = (ell + kI * z) / (ell - kI * z);
  CVector out(f.cols());
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    const CVector a = coefficients(f.col(c));
    cplx acc = 0.0;
    if (sign > 0) {
      cplx p = 1.0;
      for (int m = 0; m < n / 2; ++m, p *= wz) acc += a(m) * p;
    } else {
      const cplx winv = 1.0 / wz;
      cplx p = winv;
      for (int m = 1; m <= n / 2; ++m, p *= winv) acc += a(n - m) * p;
    }
    out(c) = acc / (ell - kI * z);
  }
  return out;
}

GridFunction hardy_project(const HardyProjector& proj, int sign, const GridFunction& f) {
  return proj.project(sign, f);
}

CVector hardy_continue(const AxisGrid& grid, int sign, const GridFunction& f, cplx z) {
  if ((sign > 0) != (z.imag() > 0.0) || z.imag() == 0.0) {
    throw DomainError("Cauchy continuation: z in the wrong half-plane");
  }
  CVector out = CVector::Zero(f.cols());
  for (int j = 0; j < grid.n; ++j) {
    out += (grid.w(j) / (grid.k(j) - z)) * f.row(j).transpose();
  }
  const cplx pref = (sign > 0 ? 1.0 : -1.0) / (2.0 * std::numbers::pi * kI);
  return pref * out;
}

double edge_mass_fraction(const AxisGrid& grid, const GridFunction& f) {
  const int band = std::max(1, grid.n / 40);
  double edge = 0.0, total = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    const double m = grid.w(j) * f.row(j).squaredNorm();
    total += m;
    if (j < band || j >= grid.n - band) edge += m;
  }
  return total > 0.0 ? edge / total : 0.0;
}

}  // namespace funcmodel
