#pragma once

#include <string>
#include <vector>

#include "funcmodel/operators.hpp"

namespace funcmodel {

/// Characteristic-type operator functions E -> E.
///
///   S            I + i alpha (L^{-||} - z)^{-1} alpha,          z in C+
///   Theta        I + iJ alpha (L* - z)^{-1} alpha, L = L^{iJ},  z in rho(L*)
///   ThetaKappa   chi_k^+ + S(z) chi_k^-,                        z in C+
///   ThetaKappaPrime  chi_k^- + S(conj z)* chi_k^+,              z in C-
///   Theta1 = chi^- + S chi^+,  Theta2 = chi^+ + S chi^-,        z in C+
///   Theta1Prime = chi^- + S(conj z)* chi^+,
///   Theta2Prime = chi^+ + S(conj z)* chi^-,                     z in C-
///
/// with chi_k^{+-} = (I +- i kappa)/2 and chi^{+-} = (I +- J)/2. The kappa and
/// J parameters are taken from the member; Theta and the Theta1/Theta2 family
/// require kappa = iJ.
enum class FunctionKind {
  S,
  Theta,
  ThetaKappa,
  ThetaKappaPrime,
  Theta1,
  Theta2,
  Theta1Prime,
  Theta2Prime,
};

std::string to_string(FunctionKind kind);
FunctionKind function_kind_from_string(const std::string& name);

enum class Analyticity { UpperHalfPlane, LowerHalfPlane, ResolventSetOfAdjoint };
Analyticity analyticity(FunctionKind kind);

struct OperatorFunctionSample {
  FunctionKind kind;
  std::vector<std::pair<cplx, CMatrix>> points;
};

struct BoundaryValueSettings {
  enum class Method { Ladder, Plemelj };
  std::vector<double> eps_ladder{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  int extrapolation_order = 2;
  Method method = Method::Ladder;

  void validate() const;
};

struct BoundaryValue {
  CMatrix value;
  double error_estimate = 0.0;
  /// False when the extrapolation increments grow along the ladder.
  bool converged = true;
  std::string note;
};

/// chi_kappa^{+-} = (I +- i kappa)/2.
CMatrix chi_kappa(const CMatrix& kappa, int sign);

/// Evaluates the function at z. Real z is accepted for upper/lower kinds on
/// the matrix backend only (where the boundary value is the value itself).
CMatrix eval_charfn(const FamilyMember& member, FunctionKind kind, cplx z);

/// Same as eval_charfn but evaluates the boundary limit from `side` without
/// domain checks. Used for model-space weight caches.
CMatrix eval_charfn_at(const FamilyMember& member, FunctionKind kind, cplx z,
                       BoundarySide side);

/// S(z) = I + i alpha (L^{-||} - z)^{-1} alpha evaluated at any z in the
/// resolvent set of L^{-||}.
CMatrix characteristic_function(const FamilyMember& member, cplx z,
                                BoundarySide side = BoundarySide::None);

/// Non-tangential boundary value at real k (from above for C+ kinds and for
/// Theta, from below for primed kinds).
BoundaryValue boundary_value(const FamilyMember& member, FunctionKind kind,
                             double k, const BoundaryValueSettings& settings);

struct ContractivityReport {
  FunctionKind kind;
  std::size_t samples = 0;
  double max_norm = 0.0;
  /// min eigenvalue of J - Theta* J Theta (Theta only).
  double min_j_form_eigenvalue = 0.0;
  bool violates = false;
};

ContractivityReport contractivity_report(const FamilyMember& member,
                                         FunctionKind kind,
                                         const std::vector<cplx>& sample);

/// || S(z) alpha f - alpha (L* - z)^{-1} (L - z) f || for L = L^{||}, with
/// the boundary operators taken to be alpha. z must lie in rho(L*).
double strauss_relation_check(const FamilyMember& member, cplx z,
                              const CVector& f);

}  // namespace funcmodel
