#include "funcmodel/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace funcmodel {
namespace {

constexpr double kHermitianTol = 1e-12;

double pole_tolerance(const RVector& evals) {
  const double scale = evals.size() ? evals.cwiseAbs().maxCoeff() : 0.0;
  return 1e-13 * (1.0 + scale);
}

void require_cols(const CMatrix& x, Eigen::Index n, const char* what) {
  if (x.rows() != n) {
    throw InputError(std::string(what) + ": dimension mismatch (expected " +
                     std::to_string(n) + " rows, got " +
                     std::to_string(x.rows()) + ")");
  }
}

// Isometry Q and diagonal m such that Q m Q* = P mp P*, truncated at
// tol * (largest eigenvalue).
void factor_from_profiles(const CMatrix& p, const CMatrix& mp, double tol,
                          PerturbationFactor& out) {
  if (p.cols() == 0) throw InputError("alpha: no profiles given");
  if (mp.rows() != p.cols() || mp.cols() != p.cols()) {
    throw InputError("alpha: m must be square with one row per profile");
  }
  if (!is_hermitian(mp, kHermitianTol)) throw InputError("alpha: m not Hermitian");
  Eigen::HouseholderQR<CMatrix> qr(p);
  const Eigen::Index k = p.cols();
  const CMatrix qthin = qr.householderQ() * CMatrix::Identity(p.rows(), k);
  const CMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  CMatrix b = r * mp * r.adjoint();
  b = 0.5 * (b + b.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(b);
  const RVector& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  if (top == 0.0) {
    // alpha = 0: keep the profile span as E with m = 0.
    out.q = qthin;
    out.m = CMatrix::Zero(k, k);
    return;
  }
  if (ev.minCoeff() < -tol * top) {
    throw InputError("alpha: not positive semidefinite");
  }
  if (ev.minCoeff() > tol * top) {
    // Full rank: E-coordinates follow the orthonormalized profiles.
    out.q = qthin;
    out.m = b;
    return;
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
    if (ev(i) > tol * top) keep.push_back(i);
  }
  const auto rank = static_cast<Eigen::Index>(keep.size());
  out.q.resize(p.rows(), rank);
  out.m = CMatrix::Zero(rank, rank);
  for (Eigen::Index c = 0; c < rank; ++c) {
    out.q.col(c) = qthin * es.eigenvectors().col(keep[c]);
    out.m(c, c) = ev(keep[c]);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// OperatorBackend

OperatorBackend OperatorBackend::matrix(const CMatrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InputError("matrix backend: A must be square and non-empty");
  }
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale) {
    throw InputError("matrix backend: A is not Hermitian");
  }
  OperatorBackend b;
  b.kind_ = Kind::Matrix;
  b.a_ = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(b.a_);
  b.evals_ = es.eigenvalues();
  b.evecs_ = es.eigenvectors();
  return b;
}

OperatorBackend OperatorBackend::friedrichs(QuadratureRule rule, double lo,
                                            double hi) {
  const auto n = rule.nodes.size();
  if (n < 2 || rule.weights.size() != n) {
    throw InputError("friedrichs backend: need matching nodes and weights");
  }
  if (!(hi > lo)) throw InputError("friedrichs backend: empty interval");
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(rule.weights(j) > 0.0)) {
      throw InputError("friedrichs backend: weights must be strictly positive");
    }
    if (j > 0 && !(rule.nodes(j) > rule.nodes(j - 1))) {
      throw InputError("friedrichs backend: nodes must be strictly increasing");
    }
  }
  if (rule.nodes(0) <= lo || rule.nodes(n - 1) >= hi) {
    throw InputError("friedrichs backend: nodes must lie inside the interval");
  }
  OperatorBackend b;
  b.kind_ = Kind::Friedrichs;
  b.evals_ = rule.nodes;
  b.sqrt_w_ = rule.weights.cwiseSqrt();
  b.lo_ = lo;
  b.hi_ = hi;
  b.interp_ = std::make_shared<LegendreInterpolant>(rule, lo, hi);
  b.rule_ = std::move(rule);
  return b;
}

CVector OperatorBackend::apply(const CVector& u) const {
  require_cols(u, dim(), "apply");
  if (kind_ == Kind::Matrix) return a_ * u;
  return evals_.cast<cplx>().cwiseProduct(u);
}

CVector OperatorBackend::resolve(cplx z, const CVector& u) const {
  require_cols(u, dim(), "resolve");
  const RVector dist = (evals_.cast<cplx>().array() - z).abs();
  if (dist.minCoeff() <= pole_tolerance(evals_)) {
    throw SpectralPointError("resolvent of A: z is an eigenvalue of A");
  }
  const CVector inv = (evals_.cast<cplx>().array() - z).inverse();
  if (kind_ == Kind::Friedrichs) return inv.cwiseProduct(u);
  return evecs_ * inv.cwiseProduct(evecs_.adjoint() * u);
}

CMatrix OperatorBackend::pairing(cplx z, BoundarySide side, const CMatrix& y,
                                 const CMatrix& x) const {
  require_cols(y, dim(), "pairing");
  require_cols(x, dim(), "pairing");
  if (kind_ == Kind::Friedrichs) {
    const double k = z.real();
    const bool inside = k > lo_ && k < hi_;
    const double band = 0.1 * (hi_ - lo_);
    if (inside && (side != BoundarySide::None || std::abs(z.imag()) < band)) {
      return continuum_pairing(z, side, y, x);
    }
    if (side != BoundarySide::None) z = cplx(k, 0.0);
    const CVector inv = (evals_.cast<cplx>().array() - z).inverse();
    return y.adjoint() * inv.asDiagonal() * x;
  }
  if (side != BoundarySide::None) z = cplx(z.real(), 0.0);
  const RVector dist = (evals_.cast<cplx>().array() - z).abs();
  if (dist.minCoeff() <= pole_tolerance(evals_)) {
    throw SpectralPointError("pairing: z is an eigenvalue of A");
  }
  const CVector inv = (evals_.cast<cplx>().array() - z).inverse();
  return (evecs_.adjoint() * y).adjoint() * inv.asDiagonal() *
         (evecs_.adjoint() * x);
}

CMatrix OperatorBackend::continuum_pairing(cplx z, BoundarySide side,
                                           const CMatrix& y,
                                           const CMatrix& x) const {
  const double k = z.real();
  const cplx zeta = side == BoundarySide::None ? z : cplx(k, 0.0);
  if (side == BoundarySide::None && zeta.imag() == 0.0) {
    throw DomainError(
        "friedrichs pairing: evaluate off the real grid (real z inside the "
        "spectrum needs a boundary side)");
  }
  const auto n = dim();
  const RVector& w = rule_->weights;

  // Node values of the functions and their interpolated values at k.
  const CMatrix yv = sqrt_w_.cwiseInverse().asDiagonal() * y;
  const CMatrix xv = sqrt_w_.cwiseInverse().asDiagonal() * x;
  // The subtracted value is the integrand continued to zeta to first order,
  // which leaves a remainder without the width-Im(zeta) spike.
  const RVector row = interp_->row(k);
  const CVector yk = yv.transpose() * row.cast<cplx>();
  const CVector xk = xv.transpose() * row.cast<cplx>();
  CMatrix pk = yk.conjugate() * xk.transpose();
  if (zeta.imag() != 0.0) {
    const RVector drow = interp_->derivative_row(k);
    const CVector dy = yv.transpose() * drow.cast<cplx>();
    const CVector dx = xv.transpose() * drow.cast<cplx>();
    pk += kI * zeta.imag() * (dy.conjugate() * xk.transpose() + yk.conjugate() * dx.transpose());
  }

  CVector inv(n);
  cplx s0 = 0.0;
  const double tiny = 1e-14 * (hi_ - lo_);
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx d = evals_(j) - zeta;
    if (std::abs(d) < tiny) {
      inv(j) = 0.0;  // the subtracted integrand is regular here
      continue;
    }
    inv(j) = 1.0 / d;
    s0 += w(j) * inv(j);
  }
  cplx log_term;
  switch (side) {
    case BoundarySide::None:
      log_term = std::log(cplx(hi_) - zeta) - std::log(cplx(lo_) - zeta);
      break;
    case BoundarySide::Upper:
      log_term = cplx(std::log((hi_ - k) / (k - lo_)), std::numbers::pi);
      break;
    case BoundarySide::Lower:
      log_term = cplx(std::log((hi_ - k) / (k - lo_)), -std::numbers::pi);
      break;
  }
  const CMatrix regular = y.adjoint() * inv.asDiagonal() * x;
  return regular + pk * (log_term - s0);
}

CMatrix OperatorBackend::dense() const {
  if (kind_ == Kind::Matrix) return a_;
  return evals_.cast<cplx>().asDiagonal();
}

const QuadratureRule& OperatorBackend::rule() const {
  if (!rule_) throw DomainError("backend has no quadrature rule");
  return *rule_;
}

CVector OperatorBackend::to_flat(const CVector& node_values) const {
  if (kind_ != Kind::Friedrichs) return node_values;
  require_cols(node_values, dim(), "to_flat");
  return sqrt_w_.cast<cplx>().cwiseProduct(node_values);
}

CVector OperatorBackend::from_flat(const CVector& flat) const {
  if (kind_ != Kind::Friedrichs) return flat;
  require_cols(flat, dim(), "from_flat");
  return sqrt_w_.cwiseInverse().cast<cplx>().cwiseProduct(flat);
}

double OperatorBackend::max_spacing() const {
  double s = 0.0;
  for (Eigen::Index j = 1; j < evals_.size(); ++j) {
    s = std::max(s, evals_(j) - evals_(j - 1));
  }
  return s;
}

// ---------------------------------------------------------------------------
// KappaParameter

KappaParameter KappaParameter::zero(Eigen::Index r) {
  return {CMatrix::Zero(r, r), Preset::Zero, std::nullopt};
}

KappaParameter KappaParameter::plus_i(Eigen::Index r) {
  return {kI * CMatrix::Identity(r, r), Preset::PlusI, std::nullopt};
}

KappaParameter KappaParameter::minus_i(Eigen::Index r) {
  return {-kI * CMatrix::Identity(r, r), Preset::MinusI, std::nullopt};
}

KappaParameter KappaParameter::i_j(const CMatrix& j) {
  if (j.rows() != j.cols()) throw InputError("J must be square");
  if (!is_hermitian(j, kHermitianTol)) throw InputError("J must be Hermitian");
  const CMatrix id = CMatrix::Identity(j.rows(), j.cols());
  if ((j * j - id).cwiseAbs().maxCoeff() > 1e-12) {
    throw InputError("J must be an involution (J^2 = I)");
  }
  return {kI * j, Preset::IJ, j};
}

KappaParameter KappaParameter::custom(const CMatrix& kappa) {
  if (kappa.rows() != kappa.cols()) throw InputError("kappa must be square");
  return {kappa, Preset::Custom, std::nullopt};
}

KappaParameter KappaParameter::adjoint() const {
  const auto r = value.rows();
  switch (preset) {
    case Preset::Zero:
      return zero(r);
    case Preset::PlusI:
      return minus_i(r);
    case Preset::MinusI:
      return plus_i(r);
    case Preset::IJ:
      return custom(value.adjoint());
    case Preset::Custom:
      break;
  }
  return custom(value.adjoint());
}

// ---------------------------------------------------------------------------
// FamilyMember

FamilyMember::FamilyMember(std::shared_ptr<const OperatorBackend> backend,
                           std::shared_ptr<const PerturbationFactor> alpha,
                           KappaParameter kappa)
    : backend_(std::move(backend)),
      alpha_(std::move(alpha)),
      kappa_(std::move(kappa)) {
  if (!backend_ || !alpha_) throw InputError("family member: null component");
  if (alpha_->q.rows() != backend_->dim()) {
    throw InputError("family member: alpha does not act on K");
  }
  if (kappa_.value.rows() != alpha_->rank() ||
      kappa_.value.cols() != alpha_->rank()) {
    throw InputError("family member: kappa/alpha dimension mismatch (kappa " +
                     std::to_string(kappa_.value.rows()) + "x" +
                     std::to_string(kappa_.value.cols()) + ", rank " +
                     std::to_string(alpha_->rank()) + ")");
  }
}

FamilyMember FamilyMember::with_kappa(KappaParameter kappa) const {
  return FamilyMember(backend_, alpha_, std::move(kappa));
}

FamilyMember FamilyMember::dissipative() const {
  return with_kappa(KappaParameter::plus_i(rank()));
}

FamilyMember FamilyMember::anti_dissipative() const {
  return with_kappa(KappaParameter::minus_i(rank()));
}

FamilyMember FamilyMember::adjoint() const { return with_kappa(kappa_.adjoint()); }

CMatrix FamilyMember::dense() const {
  const CMatrix qm = alpha_->q * alpha_->m;
  return backend_->dense() + 0.5 * qm * kappa_.value * qm.adjoint();
}

// ---------------------------------------------------------------------------
// Operations

FamilyMember build_family(const FamilySpec& spec) {
  if (!(spec.tol_rank > 0.0)) throw InputError("tol_rank must be positive");

  auto backend = std::make_shared<OperatorBackend>(std::visit(
      [](const auto& b) -> OperatorBackend {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, MatrixBackendSpec>) {
          return OperatorBackend::matrix(b.a);
        } else {
          QuadratureRule rule =
              b.rule ? *b.rule : gauss_legendre(b.nodes, b.lo, b.hi);
          return OperatorBackend::friedrichs(std::move(rule), b.lo, b.hi);
        }
      },
      spec.backend));

  auto alpha = std::make_shared<PerturbationFactor>();
  alpha->tol_rank = spec.tol_rank;
  std::optional<CMatrix> potential_j;
  const auto n = backend->dim();

  if (const auto* d = std::get_if<DenseAlphaSpec>(&spec.alpha)) {
    require_cols(d->alpha, n, "alpha");
    if (!is_hermitian(d->alpha, kHermitianTol)) {
      throw InputError("alpha: not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (d->alpha + d->alpha.adjoint()));
    const RVector& ev = es.eigenvalues();
    const double top = ev.cwiseAbs().maxCoeff();
    if (ev.minCoeff() < -spec.tol_rank * top) {
      throw InputError("alpha: not positive semidefinite");
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
      if (ev(i) > spec.tol_rank * top) keep.push_back(i);
    }
    const auto r = static_cast<Eigen::Index>(keep.size());
    alpha->q.resize(n, r);
    alpha->m = CMatrix::Zero(r, r);
    for (Eigen::Index c = 0; c < r; ++c) {
      alpha->q.col(c) = es.eigenvectors().col(keep[c]);
      alpha->m(c, c) = ev(keep[c]);
    }
  } else if (const auto* f = std::get_if<FactoredAlphaSpec>(&spec.alpha)) {
    require_cols(f->p, n, "alpha profiles");
    factor_from_profiles(f->p, f->m, spec.tol_rank, *alpha);
  } else if (const auto* v = std::get_if<PotentialAlphaSpec>(&spec.alpha)) {
    require_cols(v->v, n, "V");
    if (!is_hermitian(v->v, kHermitianTol)) throw InputError("V: not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (v->v + v->v.adjoint()));
    const RVector& ev = es.eigenvalues();
    const double top = ev.cwiseAbs().maxCoeff();
    if (top == 0.0) throw InputError("V: perturbation is identically zero");
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
      if (std::abs(ev(i)) > spec.tol_rank * top) keep.push_back(i);
    }
    const auto r = static_cast<Eigen::Index>(keep.size());
    alpha->q.resize(n, r);
    alpha->m = CMatrix::Zero(r, r);
    CMatrix j = CMatrix::Zero(r, r);
    for (Eigen::Index c = 0; c < r; ++c) {
      alpha->q.col(c) = es.eigenvectors().col(keep[c]);
      alpha->m(c, c) = std::sqrt(2.0 * std::abs(ev(keep[c])));
      j(c, c) = ev(keep[c]) > 0.0 ? 1.0 : -1.0;
    }
    potential_j = j;
  } else {
    const auto& p = std::get<ProfileAlphaSpec>(spec.alpha);
    if (backend->kind() != OperatorBackend::Kind::Friedrichs) {
      throw InputError("alpha profiles require the friedrichs backend");
    }
    CMatrix flat(n, static_cast<Eigen::Index>(p.profiles.size()));
    for (std::size_t c = 0; c < p.profiles.size(); ++c) {
      require_cols(p.profiles[c], n, "alpha profile");
      flat.col(static_cast<Eigen::Index>(c)) = backend->to_flat(p.profiles[c]);
    }
    factor_from_profiles(flat, p.m, spec.tol_rank, *alpha);
  }
  if (alpha->rank() < 1) throw InputError("alpha: rank must be at least 1");

  const auto r = alpha->rank();
  KappaParameter kappa;
  using P = KappaParameter::Preset;
  switch (spec.kappa.preset) {
    case P::Zero:
      kappa = KappaParameter::zero(r);
      break;
    case P::PlusI:
      kappa = KappaParameter::plus_i(r);
      break;
    case P::MinusI:
      kappa = KappaParameter::minus_i(r);
      break;
    case P::IJ: {
      const auto& j = spec.kappa.j ? spec.kappa.j : potential_j;
      if (!j) throw InputError("kappa = iJ requires J (or a potential V)");
      if (j->rows() != r) {
        throw InputError("kappa/alpha dimension mismatch: J is " +
                         std::to_string(j->rows()) + "x" +
                         std::to_string(j->cols()) + " but rank is " +
                         std::to_string(r));
      }
      kappa = KappaParameter::i_j(*j);
      break;
    }
    case P::Custom:
      if (!spec.kappa.matrix) throw InputError("custom kappa requires a matrix");
      kappa = KappaParameter::custom(*spec.kappa.matrix);
      break;
  }
  return FamilyMember(std::move(backend), std::move(alpha), std::move(kappa));
}

CVector apply_operator(const FamilyMember& member, const CVector& u) {
  require_cols(u, member.dim(), "apply_operator");
  const auto& a = member.alpha();
  return member.backend().apply(u) +
         0.5 * a.from_e(member.kappa().value * a.to_e(u));
}

CMatrix herglotz_m(const OperatorBackend& backend,
                   const PerturbationFactor& alpha, cplx z, BoundarySide side) {
  return alpha.m * backend.pairing(z, side, alpha.q, alpha.q) * alpha.m;
}

CVector apply_resolvent(const FamilyMember& member, cplx z, const CVector& u) {
  require_cols(u, member.dim(), "apply_resolvent");
  const auto& backend = member.backend();
  const auto& a = member.alpha();
  const auto r = member.rank();
  const CVector r0u = backend.resolve(z, u);
  const CMatrix& kappa = member.kappa().value;
  if (kappa.isZero(0.0)) return r0u;

  CMatrix r0qm(member.dim(), r);
  for (Eigen::Index c = 0; c < r; ++c) {
    r0qm.col(c) = backend.resolve(z, a.q.col(c));
  }
  r0qm = r0qm * a.m;
  const CMatrix mz = a.m * (a.q.adjoint() * r0qm);
  const CMatrix system = CMatrix::Identity(r, r) + 0.5 * mz * kappa;
  const CVector coeff = guarded_solve(
      system, a.to_e(r0u), kSpectralConditionLimit,
      "z in spectrum or at numerical eigenvalue");
  return r0u - 0.5 * r0qm * (kappa * coeff);
}

CMatrix compressed_resolvent(const FamilyMember& member, cplx z,
                             BoundarySide side) {
  const CMatrix mz = herglotz_m(member.backend(), member.alpha(), z, side);
  const auto r = member.rank();
  const CMatrix system =
      CMatrix::Identity(r, r) + 0.5 * member.kappa().value * mz;
  const CMatrix inv = guarded_inverse(system, kSpectralConditionLimit,
                                      "z in spectrum or at numerical eigenvalue");
  return mz * inv;
}

CVector alpha_resolvent(const FamilyMember& member, cplx z, BoundarySide side,
                        const CVector& u) {
  require_cols(u, member.dim(), "alpha_resolvent");
  const auto& a = member.alpha();
  const auto& backend = member.backend();
  const CMatrix mz = herglotz_m(backend, a, z, side);
  const CVector b = a.m * backend.pairing(z, side, a.q, u);
  const auto r = member.rank();
  const CMatrix system =
      CMatrix::Identity(r, r) + 0.5 * mz * member.kappa().value;
  return guarded_solve(system, b, kSpectralConditionLimit,
                       "z in spectrum or at numerical eigenvalue");
}

}  // namespace funcmodel
