#include "funcmodel/quadrature.hpp"

#include <cmath>
#include <algorithm>
#include <memory>
#include <vector>

#include <gsl/gsl_integration.h>

namespace funcmodel {

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw InputError("gauss_legendre: need at least one node");
  if (!(hi > lo)) throw InputError("gauss_legendre: empty interval");
  std::unique_ptr<gsl_integration_glfixed_table,
                  decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)),
            &gsl_integration_glfixed_table_free);
  if (!table) throw Error("gauss_legendre: table allocation failed");
  QuadratureRule rule{RVector(n), RVector(n)};
  for (int i = 0; i < n; ++i) {
    double x = 0.0;
    double w = 0.0;
    gsl_integration_glfixed_point(lo, hi, static_cast<size_t>(i), &x, &w,
                                  table.get());
    rule.nodes(i) = x;
    rule.weights(i) = w;
  }
  // GSL orders nodes symmetrically from the centre; sort ascending.
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return rule.nodes(a) < rule.nodes(b); });
  QuadratureRule sorted{RVector(n), RVector(n)};
  for (int i = 0; i < n; ++i) {
    sorted.nodes(i) = rule.nodes(idx[i]);
    sorted.weights(i) = rule.weights(idx[i]);
  }
  return sorted;
}

LegendreInterpolant::LegendreInterpolant(const QuadratureRule& rule, double lo,
                                         double hi)
    : nodes_(rule.nodes), bary_(rule.nodes.size()) {
  const double half = 0.5 * (hi - lo);
  for (Eigen::Index j = 0; j < nodes_.size(); ++j) {
    const double t = (nodes_(j) - lo) / half - 1.0;
    const double w = rule.weights(j) / half;
    bary_(j) = ((j % 2 == 0) ? 1.0 : -1.0) * std::sqrt((1.0 - t * t) * w);
  }
}

RVector LegendreInterpolant::row(double x) const {
  RVector r = RVector::Zero(nodes_.size());
  double denom = 0.0;
  for (Eigen::Index j = 0; j < nodes_.size(); ++j) {
    const double d = x - nodes_(j);
    if (d == 0.0) {
      r.setZero();
      r(j) = 1.0;
      return r;
    }
    r(j) = bary_(j) / d;
    denom += r(j);
  }
  return r / denom;
}

RVector LegendreInterpolant::derivative_row(double x) const {
  // l_j'(x) = l_j(x) (sum_i l_i(x) / (x - t_i) - 1 / (x - t_j)); nudge off nodes.
  const double span = nodes_(nodes_.size() - 1) - nodes_(0);
  for (Eigen::Index j = 0; j < nodes_.size(); ++j) {
    if (std::abs(x - nodes_(j)) < 1e-9 * span) x = nodes_(j) + 1e-9 * span;
  }
  const RVector l = row(x);
  const RVector inv_d = (x - nodes_.array()).inverse().matrix();
  const double s = l.dot(inv_d);
  return (l.array() * (s - inv_d.array())).matrix();
}

cplx LegendreInterpolant::operator()(std::span<const cplx> values,
                                     double x) const {
  const RVector r = row(x);
  cplx acc = 0.0;
  for (Eigen::Index j = 0; j < r.size(); ++j) acc += r(j) * values[j];
  return acc;
}

}  // namespace funcmodel
