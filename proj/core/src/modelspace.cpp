#include "funcmodel/modelspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "funcmodel/charfn.hpp"
#include "funcmodel/parallel.hpp"

namespace funcmodel {
namespace {

constexpr double kPinvCutoff = 1e-9;

void same_space(const ModelVector& x, const ModelVector& y) {
  if (!x.space || x.space != y.space) throw InputError("model vectors live on different grids");
}

}  // namespace

ModelSpace::ModelSpace(const FamilyMember& member, AxisGrid grid)
    : member_(member.dissipative()), projector_(std::move(grid)) {
  const int n = projector_.grid().n;
  const auto r = member_.rank();
  const bool friedrichs = member_.backend().kind() == OperatorBackend::Kind::Friedrichs;
  s_.assign(n, CMatrix());
  w_pinv_.assign(n, CMatrix());
  std::vector<double> min_eig(n, 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    const cplx k(projector_.grid().k(j), 0.0);
    const CMatrix s = characteristic_function(
        member_, k, friedrichs ? BoundarySide::Upper : BoundarySide::None);
    CMatrix w(2 * r, 2 * r);
    w << CMatrix::Identity(r, r), s.adjoint(), s, CMatrix::Identity(r, r);
    s_[j] = s;
    w_pinv_[j] = hermitian_pinv(w, kPinvCutoff);
    min_eig[j] = min_hermitian_eigenvalue(w);
  });
  min_weight_eig_ = *std::min_element(min_eig.begin(), min_eig.end());
}

GridFunction ModelSpace::apply_s(const GridFunction& f, bool adjoint) const {
  GridFunction out(f.rows(), f.cols());
  for (int j = 0; j < size(); ++j) {
    const CVector x = f.row(j).transpose();
    out.row(j) = (adjoint ? CVector(s_[j].adjoint() * x) : CVector(s_[j] * x)).transpose();
  }
  return out;
}

GridFunction ModelVector::g_minus() const { return g_tilde + space->apply_s(g, true); }

GridFunction ModelVector::g_plus() const { return space->apply_s(g_tilde) + g; }

ModelVector ModelVector::operator+(const ModelVector& o) const {
  same_space(*this, o);
  return {space, g_tilde + o.g_tilde, g + o.g};
}

ModelVector ModelVector::operator-(const ModelVector& o) const {
  same_space(*this, o);
  return {space, g_tilde - o.g_tilde, g - o.g};
}

ModelVector ModelVector::operator*(cplx s) const { return {space, g_tilde * s, g * s}; }

ModelVector ModelVector::divided_by(cplx z) const {
  ModelVector out = *this;
  const auto& k = space->grid().k;
  for (int j = 0; j < space->size(); ++j) {
    const cplx f = 1.0 / (k(j) - z);
    out.g_tilde.row(j) *= f;
    out.g.row(j) *= f;
  }
  return out;
}

ModelVector zero_model_vector(std::shared_ptr<const ModelSpace> space) {
  const int n = space->size();
  const auto r = space->rank();
  return {space, GridFunction::Zero(n, r), GridFunction::Zero(n, r)};
}

cplx model_inner(const ModelVector& x, const ModelVector& y) {
  same_space(x, y);
  const auto& grid = x.space->grid();
  // <W x, y> = <x~, y~ + S* y> + <x, S y~ + y>
  return grid_inner(grid, x.g_tilde, y.g_minus()) + grid_inner(grid, x.g, y.g_plus());
}

double model_norm(const ModelVector& x) {
  return std::sqrt(std::max(0.0, model_inner(x, x).real()));
}

ModelVector project_to_K(const ModelVector& x) {
  const auto& proj = x.space->projector();
  return {x.space, x.g_tilde - proj.project(+1, x.g_minus()),
          x.g - proj.project(-1, x.g_plus())};
}

GridFunction spectral_map_u(const ModelSpace& space, int sign, const CVector& u) {
  const FamilyMember member =
      sign > 0 ? space.dissipative() : space.dissipative().anti_dissipative();
  const BoundarySide side = sign > 0 ? BoundarySide::Lower : BoundarySide::Upper;
  const int n = space.size();
  GridFunction out(n, space.rank());
  const double c = -1.0 / std::sqrt(2.0 * std::numbers::pi);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    const cplx k(space.grid().k(j), 0.0);
    out.row(j) = (c * alpha_resolvent(member, k, side, u)).transpose();
  });
  return out;
}

GridFunction spectral_map_F(const ModelSpace& space, int sign, const DilationVector& h) {
  const int n = space.size();
  GridFunction vm(n, space.rank()), vp(n, space.rank());
  for (int j = 0; j < n; ++j) {
    const cplx k(space.grid().k(j), 0.0);
    vm.row(j) = h.v_minus.fourier(k).transpose();
    vp.row(j) = h.v_plus.fourier(k).transpose();
  }
  GridFunction out = spectral_map_u(space, sign, h.u);
  if (sign > 0) {
    out += space.apply_s(vm, true) + vp;
  } else {
    out += vm + space.apply_s(vp);
  }
  return out;
}

ModelVector model_from_pair(std::shared_ptr<const ModelSpace> space,
                            const GridFunction& f_plus, const GridFunction& f_minus) {
  const int n = space->size();
  const auto r = space->rank();
  ModelVector out = zero_model_vector(space);
  for (int j = 0; j < n; ++j) {
    CVector rhs(2 * r);
    rhs << f_plus.row(j).transpose(), f_minus.row(j).transpose();
    const CVector x = space->w_pinv(j) * rhs;
    out.g_tilde.row(j) = x.head(r).transpose();
    out.g.row(j) = x.tail(r).transpose();
  }
  return out;
}

ModelVector map_Phi(std::shared_ptr<const ModelSpace> space, const DilationVector& h) {
  return model_from_pair(space, spectral_map_F(*space, +1, h),
                         spectral_map_F(*space, -1, h));
}

}  // namespace funcmodel
