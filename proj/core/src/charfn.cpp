#include "funcmodel/charfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace funcmodel {
namespace {

constexpr std::array<std::pair<FunctionKind, const char*>, 8> kNames{{
    {FunctionKind::S, "S"},
    {FunctionKind::Theta, "Theta"},
    {FunctionKind::ThetaKappa, "ThetaKappa"},
    {FunctionKind::ThetaKappaPrime, "ThetaKappaPrime"},
    {FunctionKind::Theta1, "Theta1"},
    {FunctionKind::Theta2, "Theta2"},
    {FunctionKind::Theta1Prime, "Theta1Prime"},
    {FunctionKind::Theta2Prime, "Theta2Prime"},
}};

const CMatrix& require_j(const FamilyMember& member, FunctionKind kind) {
  if (!member.kappa().is_i_j() || !member.kappa().j) {
    throw InputError(to_string(kind) + " requires a member with kappa = iJ");
  }
  return *member.kappa().j;
}

BoundarySide natural_side(FunctionKind kind) {
  return analyticity(kind) == Analyticity::LowerHalfPlane ? BoundarySide::Lower
                                                          : BoundarySide::Upper;
}

// Polynomial extrapolation to eps = 0 through the given points (Neville).
CMatrix extrapolate_to_zero(std::vector<double> eps, std::vector<CMatrix> vals) {
  const std::size_t p = eps.size();
  for (std::size_t level = 1; level < p; ++level) {
    for (std::size_t i = 0; i + level < p; ++i) {
      const double xi = eps[i];
      const double xj = eps[i + level];
      vals[i] = (xi * vals[i + 1] - xj * vals[i]) / (xi - xj);
    }
  }
  return vals[0];
}

}  // namespace

std::string to_string(FunctionKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

FunctionKind function_kind_from_string(const std::string& name) {
  for (const auto& [k, n] : kNames) {
    if (name == n) return k;
  }
  throw InputError("unknown operator function kind: " + name);
}

Analyticity analyticity(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::S:
    case FunctionKind::ThetaKappa:
    case FunctionKind::Theta1:
    case FunctionKind::Theta2:
      return Analyticity::UpperHalfPlane;
    case FunctionKind::ThetaKappaPrime:
    case FunctionKind::Theta1Prime:
    case FunctionKind::Theta2Prime:
      return Analyticity::LowerHalfPlane;
    case FunctionKind::Theta:
      break;
  }
  return Analyticity::ResolventSetOfAdjoint;
}

void BoundaryValueSettings::validate() const {
  if (eps_ladder.size() < 2) throw InputError("eps ladder needs two rungs");
  for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
    if (!(eps_ladder[i] > 0.0)) throw InputError("eps ladder must be positive");
    if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1])) {
      throw InputError("eps ladder must be strictly decreasing");
    }
  }
  if (extrapolation_order < 0) throw InputError("negative extrapolation order");
}

CMatrix chi_kappa(const CMatrix& kappa, int sign) {
  const auto r = kappa.rows();
  return 0.5 * (CMatrix::Identity(r, r) + (sign > 0 ? kI : -kI) * kappa);
}

CMatrix characteristic_function(const FamilyMember& member, cplx z,
                                BoundarySide side) {
  const auto r = member.rank();
  return CMatrix::Identity(r, r) +
         kI * compressed_resolvent(member.anti_dissipative(), z, side);
}

CMatrix eval_charfn_at(const FamilyMember& member, FunctionKind kind, cplx z,
                       BoundarySide side) {
  const auto r = member.rank();
  const CMatrix id = CMatrix::Identity(r, r);
  auto s_upper = [&] { return characteristic_function(member, z, side); };
  // S*(conj z) for z in the lower half-plane (boundary side mirrored).
  auto s_star_mirror = [&] {
    const BoundarySide mirrored = side == BoundarySide::Lower
                                      ? BoundarySide::Upper
                                      : (side == BoundarySide::Upper
                                             ? BoundarySide::Lower
                                             : BoundarySide::None);
    return CMatrix(characteristic_function(member, std::conj(z), mirrored)
                       .adjoint());
  };
  switch (kind) {
    case FunctionKind::S:
      return s_upper();
    case FunctionKind::Theta: {
      const CMatrix& j = require_j(member, kind);
      return id + kI * j * compressed_resolvent(member.adjoint(), z, side);
    }
    case FunctionKind::ThetaKappa: {
      const CMatrix& kappa = member.kappa().value;
      return chi_kappa(kappa, +1) + s_upper() * chi_kappa(kappa, -1);
    }
    case FunctionKind::ThetaKappaPrime: {
      const CMatrix& kappa = member.kappa().value;
      return chi_kappa(kappa, -1) + s_star_mirror() * chi_kappa(kappa, +1);
    }
    case FunctionKind::Theta1:
    case FunctionKind::Theta2:
    case FunctionKind::Theta1Prime:
    case FunctionKind::Theta2Prime: {
      const CMatrix& j = require_j(member, kind);
      const CMatrix chi_p = spectral_projection(j, +1);
      const CMatrix chi_m = spectral_projection(j, -1);
      if (kind == FunctionKind::Theta1) return chi_m + s_upper() * chi_p;
      if (kind == FunctionKind::Theta2) return chi_p + s_upper() * chi_m;
      if (kind == FunctionKind::Theta1Prime) return chi_m + s_star_mirror() * chi_p;
      return chi_p + s_star_mirror() * chi_m;
    }
  }
  throw InputError("unhandled function kind");
}

CMatrix eval_charfn(const FamilyMember& member, FunctionKind kind, cplx z) {
  const bool matrix =
      member.backend().kind() == OperatorBackend::Kind::Matrix;
  switch (analyticity(kind)) {
    case Analyticity::UpperHalfPlane:
      if (z.imag() < 0.0 || (z.imag() == 0.0 && !matrix)) {
        throw DomainError(to_string(kind) +
                          ": z outside the upper half-plane of analyticity");
      }
      break;
    case Analyticity::LowerHalfPlane:
      if (z.imag() > 0.0 || (z.imag() == 0.0 && !matrix)) {
        throw DomainError(to_string(kind) +
                          ": z outside the lower half-plane of analyticity");
      }
      break;
    case Analyticity::ResolventSetOfAdjoint:
      break;
  }
  return eval_charfn_at(member, kind, z, BoundarySide::None);
}

BoundaryValue boundary_value(const FamilyMember& member, FunctionKind kind,
                             double k, const BoundaryValueSettings& settings) {
  settings.validate();
  const BoundarySide side = natural_side(kind);
  BoundaryValue out;
  if (settings.method == BoundaryValueSettings::Method::Plemelj) {
    if (member.backend().kind() != OperatorBackend::Kind::Friedrichs) {
      throw InputError("plemelj boundary values need the friedrichs backend");
    }
    out.value = eval_charfn_at(member, kind, cplx(k, 0.0), side);
    out.note = "plemelj";
    return out;
  }

  const double sign = side == BoundarySide::Lower ? -1.0 : 1.0;
  const auto& eps = settings.eps_ladder;
  std::vector<CMatrix> vals;
  vals.reserve(eps.size());
  for (double e : eps) {
    vals.push_back(eval_charfn_at(member, kind, cplx(k, sign * e),
                                  BoundarySide::None));
  }
  const std::size_t window = std::min<std::size_t>(
      static_cast<std::size_t>(settings.extrapolation_order) + 1, eps.size() - 1);
  std::vector<CMatrix> extrapolated;
  for (std::size_t end = window; end <= eps.size(); ++end) {
    const std::size_t begin = end - window;
    extrapolated.push_back(extrapolate_to_zero(
        std::vector<double>(eps.begin() + begin, eps.begin() + end),
        std::vector<CMatrix>(vals.begin() + begin, vals.begin() + end)));
  }
  out.value = extrapolated.back();
  std::vector<double> increments;
  for (std::size_t i = 1; i < extrapolated.size(); ++i) {
    increments.push_back((extrapolated[i] - extrapolated[i - 1]).norm());
  }
  out.error_estimate = increments.empty() ? 0.0 : increments.back();
  if (increments.size() >= 2) {
    const double last = increments.back();
    const double prev = increments[increments.size() - 2];
    const double scale = std::max(1.0, out.value.norm());
    if (last > prev && last > 1e-6 * scale) {
      out.converged = false;
      out.note = "possible singular point";
    }
  }
  out.note = out.converged ? "ladder" : out.note;
  return out;
}

ContractivityReport contractivity_report(const FamilyMember& member,
                                         FunctionKind kind,
                                         const std::vector<cplx>& sample) {
  ContractivityReport rep{kind, sample.size(), 0.0, 0.0, false};
  if (kind == FunctionKind::Theta) {
    const CMatrix& j = require_j(member, kind);
    double min_eig = std::numeric_limits<double>::infinity();
    for (cplx z : sample) {
      const CMatrix th = eval_charfn(member, kind, z);
      rep.max_norm = std::max(rep.max_norm, operator_norm(th));
      min_eig = std::min(min_eig,
                         min_hermitian_eigenvalue(j - th.adjoint() * j * th));
    }
    rep.min_j_form_eigenvalue = sample.empty() ? 0.0 : min_eig;
    rep.violates = rep.min_j_form_eigenvalue < -1e-10;
    return rep;
  }
  for (cplx z : sample) {
    rep.max_norm = std::max(rep.max_norm, operator_norm(eval_charfn(member, kind, z)));
  }
  rep.violates = kind == FunctionKind::S && rep.max_norm > 1.0 + 1e-10;
  return rep;
}

double strauss_relation_check(const FamilyMember& member, cplx z,
                              const CVector& f) {
  const FamilyMember diss = member.dissipative();
  const FamilyMember anti = member.anti_dissipative();
  const auto& alpha = member.alpha();
  const CMatrix s = characteristic_function(member, z);
  const CVector lhs = s * alpha.to_e(f);
  const CVector shifted = apply_operator(diss, f) - z * f;
  const CVector rhs = alpha.to_e(apply_resolvent(anti, z, shifted));
  return (lhs - rhs).norm();
}

}  // namespace funcmodel
