#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "funcmodel/linalg.hpp"
#include "funcmodel/quadrature.hpp"

namespace funcmodel {

/// Which side of the real axis a boundary value is taken from. `None` means
/// the spectral parameter is used as given.
enum class BoundarySide { None, Upper, Lower };

/// Condition-number threshold above which r x r systems are declared singular.
inline constexpr double kSpectralConditionLimit = 1e12;

/// The self-adjoint part A acting on K.
///
/// K-vectors are always stored in flat coordinates, in which the inner product
/// is the plain Euclidean one. For the Friedrichs variant a function with node
/// values u_j has flat coordinates sqrt(w_j) u_j; A is then diagonal.
class OperatorBackend {
 public:
  enum class Kind { Matrix, Friedrichs };

  /// Hermitian n x n matrix. Throws InputError if ||A - A*|| > 1e-12 ||A||.
  static OperatorBackend matrix(const CMatrix& a);

  /// Multiplication by x on L2([lo, hi]) discretized by the given rule.
  static OperatorBackend friedrichs(QuadratureRule rule, double lo, double hi);

  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return evals_.size(); }

  /// Eigenvalues of A (the nodes for Friedrichs).
  const RVector& eigenvalues() const { return evals_; }

  CVector apply(const CVector& u) const;

  /// (A - z)^{-1} u on the discretized space.
  CVector resolve(cplx z, const CVector& u) const;

  /// Y* (A - z)^{-1} X for thin matrices of K-vectors.
  ///
  /// Matrix backend: exact spectral sum; `side` only matters for the error
  /// check since real z away from eigenvalues is regular.
  /// Friedrichs backend: for Re z inside the interval and z close to the axis
  /// (or a boundary side requested) the continuum Cauchy integral is used,
  /// with the singular part subtracted and integrated in closed form; the
  /// Upper/Lower sides give the Sokhotski-Plemelj limits z = k +- i0.
  CMatrix pairing(cplx z, BoundarySide side, const CMatrix& y,
                  const CMatrix& x) const;

  /// A as a dense matrix in flat coordinates.
  CMatrix dense() const;

  // Friedrichs helpers. Valid only for Kind::Friedrichs.
  const QuadratureRule& rule() const;
  double lower() const { return lo_; }
  double upper() const { return hi_; }
  CVector to_flat(const CVector& node_values) const;
  CVector from_flat(const CVector& flat) const;
  /// Largest spacing between consecutive nodes.
  double max_spacing() const;

 private:
  CMatrix continuum_pairing(cplx z, BoundarySide side, const CMatrix& y,
                            const CMatrix& x) const;

  Kind kind_ = Kind::Matrix;
  CMatrix a_;
  RVector evals_;
  CMatrix evecs_;
  std::optional<QuadratureRule> rule_;
  RVector sqrt_w_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::shared_ptr<const LegendreInterpolant> interp_;
};

/// alpha = Q m Q*, with Q an isometry from the r-dimensional coordinate space
/// of E = clos ran alpha into K, and m Hermitian positive semidefinite.
struct PerturbationFactor {
  CMatrix q;  // n x r, orthonormal columns (flat coordinates)
  CMatrix m;  // r x r
  double tol_rank = 1e-10;

  Eigen::Index rank() const { return m.rows(); }
  CMatrix dense() const { return q * m * q.adjoint(); }
  /// alpha u expressed in E-coordinates: m Q* u.
  CVector to_e(const CVector& u) const { return m * (q.adjoint() * u); }
  /// alpha applied to an E-coordinate vector: Q m xi.
  CVector from_e(const CVector& xi) const { return q * (m * xi); }
};

/// The parameter kappa in E-coordinates.
struct KappaParameter {
  enum class Preset { Zero, PlusI, MinusI, IJ, Custom };

  CMatrix value;
  Preset preset = Preset::Custom;
  std::optional<CMatrix> j;  // set for Preset::IJ

  static KappaParameter zero(Eigen::Index r);
  static KappaParameter plus_i(Eigen::Index r);
  static KappaParameter minus_i(Eigen::Index r);
  /// kappa = iJ; J must be a Hermitian involution to 1e-12.
  static KappaParameter i_j(const CMatrix& j);
  static KappaParameter custom(const CMatrix& kappa);

  bool is_zero() const { return preset == Preset::Zero; }
  bool is_plus_i() const { return preset == Preset::PlusI; }
  bool is_minus_i() const { return preset == Preset::MinusI; }
  bool is_i_j() const { return preset == Preset::IJ; }

  /// Parameter of the adjoint operator (kappa*).
  KappaParameter adjoint() const;
};

/// L^kappa = A + alpha kappa alpha / 2 on dom(A).
class FamilyMember {
 public:
  FamilyMember(std::shared_ptr<const OperatorBackend> backend,
               std::shared_ptr<const PerturbationFactor> alpha,
               KappaParameter kappa);

  const OperatorBackend& backend() const { return *backend_; }
  const PerturbationFactor& alpha() const { return *alpha_; }
  const KappaParameter& kappa() const { return kappa_; }
  Eigen::Index rank() const { return alpha_->rank(); }
  Eigen::Index dim() const { return backend_->dim(); }

  /// Same A and alpha, different kappa.
  FamilyMember with_kappa(KappaParameter kappa) const;
  FamilyMember dissipative() const;       // kappa = iI
  FamilyMember anti_dissipative() const;  // kappa = -iI
  FamilyMember adjoint() const;           // kappa*

  /// L^kappa as a dense matrix in flat coordinates.
  CMatrix dense() const;

 private:
  std::shared_ptr<const OperatorBackend> backend_;
  std::shared_ptr<const PerturbationFactor> alpha_;
  KappaParameter kappa_;
};

// ---------------------------------------------------------------------------
// Problem description consumed by build_family.

struct MatrixBackendSpec {
  CMatrix a;
};

struct FriedrichsBackendSpec {
  double lo = -1.0;
  double hi = 1.0;
  int nodes = 512;
  /// Optional explicit rule; overrides `nodes` when present.
  std::optional<QuadratureRule> rule;
};

/// Dense Hermitian PSD alpha (flat coordinates).
struct DenseAlphaSpec {
  CMatrix alpha;
};
/// alpha = P m P*; P need not be orthonormal.
struct FactoredAlphaSpec {
  CMatrix p;
  CMatrix m;
};
/// V = V*: alpha = sqrt(2|V|), J = sign V compressed to E.
struct PotentialAlphaSpec {
  CMatrix v;
};
/// Friedrichs profiles given as node values of functions on [lo, hi];
/// alpha = P m P* with P the flat profiles.
struct ProfileAlphaSpec {
  std::vector<CVector> profiles;
  CMatrix m;
};

using AlphaSpec = std::variant<DenseAlphaSpec, FactoredAlphaSpec,
                               PotentialAlphaSpec, ProfileAlphaSpec>;

struct KappaSpec {
  KappaParameter::Preset preset = KappaParameter::Preset::PlusI;
  std::optional<CMatrix> j;       // E-coordinates; required for IJ unless V given
  std::optional<CMatrix> matrix;  // required for Custom
};

struct FamilySpec {
  std::variant<MatrixBackendSpec, FriedrichsBackendSpec> backend;
  AlphaSpec alpha;
  KappaSpec kappa;
  double tol_rank = 1e-10;
};

/// Validates the description and extracts E by singular-value truncation at
/// tol_rank relative to the largest singular value.
FamilyMember build_family(const FamilySpec& spec);

/// Au + alpha kappa alpha u / 2.
CVector apply_operator(const FamilyMember& member, const CVector& u);

/// (L^kappa - z)^{-1} u through the rank-r resolvent update
///   (A-z)^{-1} - 1/2 (A-z)^{-1} alpha kappa (I + M(z) kappa / 2)^{-1} alpha (A-z)^{-1}.
/// Throws SpectralPointError when the r x r system is numerically singular.
CVector apply_resolvent(const FamilyMember& member, cplx z, const CVector& u);

/// M(z) = m Q* (A - z)^{-1} Q m.
CMatrix herglotz_m(const OperatorBackend& backend,
                   const PerturbationFactor& alpha, cplx z,
                   BoundarySide side = BoundarySide::None);

/// m Q* (L^kappa - z)^{-1} Q m = M (I + kappa M / 2)^{-1}.
CMatrix compressed_resolvent(const FamilyMember& member, cplx z,
                             BoundarySide side = BoundarySide::None);

/// alpha (L^kappa - z)^{-1} u in E-coordinates.
CVector alpha_resolvent(const FamilyMember& member, cplx z, BoundarySide side,
                        const CVector& u);

}  // namespace funcmodel
