#pragma once

#include <string>
#include <vector>

#include "funcmodel/modelspace.hpp"
#include "funcmodel/operators.hpp"

namespace funcmodel {

/// Model image of (L^kappa - z0)^{-1} applied to the class of x (x in the
/// subspace K of the model space):
///   z0 in C-: P_K (k - z0)^{-1} (g~, g - chi_k^+ Theta'_k(z0)^{-1} (g~ + S* g)(z0))
///   z0 in C+: P_K (k - z0)^{-1} (g~ - chi_k^- Theta_k(z0)^{-1} (S g~ + g)(z0), g)
/// The values at z0 are Cauchy-integral continuations of the grid functions.
ModelVector model_resolvent(const FamilyMember& member, cplx z0, const ModelVector& x);

struct FpmResidual {
  double plus = 0.0;   // flat L2 norm of LHS - RHS for F+
  double minus = 0.0;  // same for F-
  double scale = 0.0;  // flat L2 norm of F+-(L^kappa - z0)^{-1} u
};

/// Residuals of
///   F+ (L - z0)^{-1} u = [F+ u - Theta'_k(k) Theta'_k(z0)^{-1} (F+ u)(z0)] / (k - z0)
///   F- (L - z0)^{-1} u = [F- u - Theta_k(k)  Theta'_k(z0)^{-1} (F+ u)(z0)] / (k - z0)
/// on the grid of `space`, for z0 in C-.
FpmResidual fpm_identity_residual(const ModelSpace& space, const FamilyMember& member,
                                  cplx z0, const CVector& u);

enum class Membership { Member, NonMember, Undetermined };
std::string to_string(Membership m);

struct SmoothnessSettings {
  std::vector<double> eps_ladder{1e-1, 1e-2, 1e-3, 1e-4};
  /// Relative variation over the last two rungs below which the ladder
  /// integrals count as bounded.
  double bounded_variation = 0.1;
  /// Growth exponent above which the integrals count as unbounded.
  double growth_exponent = 0.5;
  double hardy_member = 1e-3;
  double hardy_non_member = 1e-1;

  void validate() const;
};

struct HalfPlaneEvidence {
  Membership verdict = Membership::Undetermined;
  /// int || alpha (L^kappa - k -+ i eps)^{-1} u ||^2 dk per rung.
  std::vector<double> integrals;
  double growth_exponent = 0.0;
  /// || P_-+ f || / || f || on the model grid at the smallest rung.
  double hardy_defect = 0.0;
  std::string note;
};

struct SmoothnessVerdict {
  HalfPlaneEvidence plus;   // membership in N~+ (H2+)
  HalfPlaneEvidence minus;  // membership in N~- (H2-)
  bool in_N_plus() const { return plus.verdict == Membership::Member; }
  bool in_N_minus() const { return minus.verdict == Membership::Member; }
  bool smooth() const { return in_N_plus() && in_N_minus(); }
};

SmoothnessVerdict smooth_membership(const ModelSpace& space, const FamilyMember& member,
                                    const CVector& u, const SmoothnessSettings& settings);

/// Representative of the model image of u adapted to L^kappa:
///   c = Theta'_k(k - i0)^{-1} F+ u, d = Theta_k(k + i0)^{-1} F- u,
///   pinv(W) (chi_k^- (c - d), -chi_k^+ (c - d)).
ModelVector smooth_representative(std::shared_ptr<const ModelSpace> space,
                                  const FamilyMember& member, const CVector& u);

/// || Phi (L^kappa - z)^{-1} u - P_K (k - z)^{-1} R(u) ||_H / || Phi (L^kappa - z)^{-1} u ||_H
/// with R(u) the smooth representative, so that P_K R(u) = Phi u.
double new_representation_residual(std::shared_ptr<const ModelSpace> space,
                                   const FamilyMember& member, const CVector& u, cplx z);

/// Reference L^0 = A and target L^kappa over the same A and alpha.
struct ScatteringPair {
  FamilyMember reference;
  FamilyMember target;

  static ScatteringPair from_target(const FamilyMember& target);
};

struct WaveModelResult {
  ModelVector value;
  /// Grid nodes where I + S(k) has condition number above 1e12.
  std::vector<double> exceptional_points;
};

/// (g~, g) -> (-(I + S)^{-1} (I + S*) g, g).
WaveModelResult wave_operator_model(const ModelVector& x);

/// Stationary W_- u computed from the smooth representative of u for the
/// pair's target.
WaveModelResult wave_operator_model(std::shared_ptr<const ModelSpace> space,
                                    const ScatteringPair& pair, const CVector& u);

/// || P_K W(L^k - z)^{-1} u - model_resolvent(L^0, z, P_K W u) ||_H relative
/// to the first term, W the stationary wave operator.
double wave_intertwining_residual(std::shared_ptr<const ModelSpace> space,
                                  const ScatteringPair& pair, const CVector& u, cplx z);

struct WaveTimeResult {
  std::vector<double> times;
  std::vector<CVector> approximants;  // e^{i L^0 t} e^{-i L^k t} u at t = -T
  std::vector<double> increments;     // || w_i - w_{i-1} ||
  bool converged = true;
  std::string note;
};

WaveTimeResult wave_operator_time(const ScatteringPair& pair, const CVector& u,
                                  const std::vector<double>& t_ladder);

struct SingularReport {
  double factorization_upper = 0.0;  // max residual over samples in C+
  double factorization_lower = 0.0;  // max residual over samples in C-
  double separability_sup = 0.0;
  double separability_margin = 0.0;
  std::vector<std::pair<cplx, cplx>> det_theta;
};

SingularReport singular_report(const FamilyMember& member, const std::vector<cplx>& z_samples,
                               const std::vector<double>& k_grid);

}  // namespace funcmodel
