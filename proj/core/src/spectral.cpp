#include "funcmodel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "funcmodel/charfn.hpp"
#include "funcmodel/parallel.hpp"
#include "funcmodel/pg.hpp"

namespace funcmodel {
namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

GridFunction constant_rows(int n, const CVector& v) {
  GridFunction out(n, v.size());
  for (int j = 0; j < n; ++j) out.row(j) = v.transpose();
  return out;
}

GridFunction divide_by(const AxisGrid& grid, GridFunction f, cplx z) {
  for (int j = 0; j < grid.n; ++j) f.row(j) /= (grid.k(j) - z);
  return f;
}

CMatrix theta_prime_lower(const ModelSpace& space, int j, const CMatrix& kappa) {
  return chi_kappa(kappa, -1) + space.s_at(j).adjoint() * chi_kappa(kappa, +1);
}

CMatrix theta_upper(const ModelSpace& space, int j, const CMatrix& kappa) {
  return chi_kappa(kappa, +1) + space.s_at(j) * chi_kappa(kappa, -1);
}

struct LadderIntegrand {
  const FamilyMember* member;
  const CVector* u;
  double shift;  // +eps or -eps
};

double ladder_integrand(double k, void* params) {
  const auto* p = static_cast<const LadderIntegrand*>(params);
  try {
    return alpha_resolvent(*p->member, cplx(k, p->shift), BoundarySide::None, *p->u)
        .squaredNorm();
  } catch (const SpectralPointError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// int over the real line with breakpoints at the real parts of the poles.
double integrate_line(LadderIntegrand& data, std::vector<double> breaks) {
  gsl_set_error_handler_off();
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
  gsl_function fn{&ladder_integrand, &data};
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               breaks.end());
  double total = 0.0, part = 0.0, err = 0.0;
  const double epsrel = 1e-8;
  gsl_integration_qagil(&fn, breaks.front(), 0.0, epsrel, 2000, ws, &part, &err);
  total += part;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    gsl_integration_qags(&fn, breaks[i], breaks[i + 1], 0.0, epsrel, 2000, ws, &part, &err);
    total += part;
  }
  gsl_integration_qagiu(&fn, breaks.back(), 0.0, epsrel, 2000, ws, &part, &err);
  total += part;
  gsl_integration_workspace_free(ws);
  return total;
}

HalfPlaneEvidence half_plane(const ModelSpace& space, const FamilyMember& member,
                             const CVector& u, int sign, const SmoothnessSettings& st,
                             const std::vector<double>& breaks) {
  HalfPlaneEvidence ev;
  for (double eps : st.eps_ladder) {
    LadderIntegrand data{&member, &u, sign * eps};
    ev.integrals.push_back(integrate_line(data, breaks));
  }
  const double scale = std::max(1.0, u.squaredNorm());
  const std::size_t m = ev.integrals.size();
  const double last = ev.integrals[m - 1];
  const double prev = ev.integrals[m - 2];
  if (std::all_of(ev.integrals.begin(), ev.integrals.end(),
                  [&](double v) { return std::abs(v) <= 1e-24 * scale; })) {
    ev.verdict = Membership::Member;
    ev.note = "alpha (L - z)^{-1} u vanishes";
    return ev;
  }
  if (!std::isfinite(last)) {
    ev.verdict = Membership::NonMember;
    ev.note = "pole on the ladder";
    return ev;
  }
  ev.growth_exponent =
      std::log(last / prev) / std::log(st.eps_ladder[m - 2] / st.eps_ladder[m - 1]);
  if (ev.growth_exponent > st.growth_exponent) {
    ev.verdict = Membership::NonMember;
    ev.note = "ladder integrals grow";
    return ev;
  }
  if (std::abs(last - prev) >= st.bounded_variation * prev) {
    ev.verdict = Membership::Undetermined;
    ev.note = "growth between thresholds";
    return ev;
  }
  const int n = space.size();
  const double eps = st.eps_ladder.back();
  GridFunction f(n, member.rank());
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    f.row(j) = alpha_resolvent(member, cplx(space.grid().k(j), sign * eps),
                               BoundarySide::None, u)
                   .transpose();
  });
  const double fn = grid_norm(space.grid(), f);
  ev.hardy_defect =
      fn > 0.0 ? grid_norm(space.grid(), space.projector().project(-sign, f)) / fn : 0.0;
  if (ev.hardy_defect < st.hardy_member) {
    ev.verdict = Membership::Member;
    ev.note = "bounded, Hardy defect small";
  } else if (ev.hardy_defect > st.hardy_non_member) {
    ev.verdict = Membership::NonMember;
    ev.note = "bounded but poles in the half-plane";
  } else {
    ev.verdict = Membership::Undetermined;
    ev.note = "Hardy defect between thresholds";
  }
  return ev;
}

}  // namespace

ModelVector model_resolvent(const FamilyMember& member, cplx z0, const ModelVector& x) {
  if (z0.imag() == 0.0) throw DomainError("model_resolvent needs non-real z0");
  const auto& space = *x.space;
  const CMatrix& kappa = member.kappa().value;
  const int n = space.size();
  ModelVector y = x;
  if (z0.imag() < 0.0) {
    const CVector val = hardy_continue(space.grid(), -1, x.g_minus(), z0);
    const CMatrix th = eval_charfn_at(member, FunctionKind::ThetaKappaPrime, z0,
                                      BoundarySide::None);
    const CVector corr = chi_kappa(kappa, +1) *
                         guarded_solve(th, val, kSpectralConditionLimit,
                                       "z0 spectral or convention mismatch");
    y.g -= constant_rows(n, corr);
  } else {
    const CVector val = hardy_continue(space.grid(), +1, x.g_plus(), z0);
    const CMatrix th = eval_charfn_at(member, FunctionKind::ThetaKappa, z0,
                                      BoundarySide::None);
    const CVector corr = chi_kappa(kappa, -1) *
                         guarded_solve(th, val, kSpectralConditionLimit,
                                       "z0 spectral or convention mismatch");
    y.g_tilde -= constant_rows(n, corr);
  }
  return project_to_K(y.divided_by(z0));
}

FpmResidual fpm_identity_residual(const ModelSpace& space, const FamilyMember& member,
                                  cplx z0, const CVector& u) {
  if (!(z0.imag() < 0.0)) throw DomainError("FPM identity is checked for z0 in C-");
  const CMatrix& kappa = member.kappa().value;
  const auto& grid = space.grid();
  const int n = space.size();
  const CVector ru = apply_resolvent(member, z0, u);
  const GridFunction lhs_p = spectral_map_u(space, +1, ru);
  const GridFunction lhs_m = spectral_map_u(space, -1, ru);
  const GridFunction fp = spectral_map_u(space, +1, u);
  const GridFunction fm = spectral_map_u(space, -1, u);
  const CVector fp_z0 =
      -kInvSqrt2Pi * alpha_resolvent(space.dissipative(), z0, BoundarySide::None, u);
  const CMatrix th_z0 = eval_charfn_at(member, FunctionKind::ThetaKappaPrime, z0,
                                       BoundarySide::None);
  const CVector t = guarded_solve(th_z0, fp_z0, kSpectralConditionLimit,
                                  "z0 spectral or convention mismatch");
  GridFunction rhs_p(n, space.rank()), rhs_m(n, space.rank());
  for (int j = 0; j < n; ++j) {
    rhs_p.row(j) = fp.row(j) - (theta_prime_lower(space, j, kappa) * t).transpose();
    rhs_m.row(j) = fm.row(j) - (theta_upper(space, j, kappa) * t).transpose();
  }
  rhs_p = divide_by(grid, rhs_p, z0);
  rhs_m = divide_by(grid, rhs_m, z0);
  FpmResidual res;
  res.plus = grid_norm(grid, lhs_p - rhs_p);
  res.minus = grid_norm(grid, lhs_m - rhs_m);
  res.scale = std::hypot(grid_norm(grid, lhs_p), grid_norm(grid, lhs_m));
  return res;
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Member:
      return "member";
    case Membership::NonMember:
      return "non-member";
    case Membership::Undetermined:
      break;
  }
  return "undetermined";
}

void SmoothnessSettings::validate() const {
  if (eps_ladder.size() < 2) throw InputError("eps ladder needs two rungs");
  for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
    if (!(eps_ladder[i] > 0.0) || (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1]))) {
      throw InputError("eps ladder must be positive and strictly decreasing");
    }
  }
  if (!(hardy_member < hardy_non_member)) throw InputError("Hardy thresholds out of order");
}

SmoothnessVerdict smooth_membership(const ModelSpace& space, const FamilyMember& member,
                                    const CVector& u, const SmoothnessSettings& settings) {
  settings.validate();
  if (u.size() != member.dim()) throw InputError("vector has the wrong dimension");
  if (u.norm() == 0.0) throw InputError("smooth_membership needs u != 0");
  std::vector<double> breaks;
  const auto& backend = member.backend();
  if (backend.kind() == OperatorBackend::Kind::Matrix) {
    Eigen::ComplexEigenSolver<CMatrix> es(member.dense(), false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      breaks.push_back(es.eigenvalues()(i).real());
    }
  } else {
    breaks = {backend.lower(), backend.upper()};
  }
  SmoothnessVerdict v;
  v.plus = half_plane(space, member, u, +1, settings, breaks);
  v.minus = half_plane(space, member, u, -1, settings, breaks);
  return v;
}

ModelVector smooth_representative(std::shared_ptr<const ModelSpace> space,
                                  const FamilyMember& member, const CVector& u) {
  const CMatrix& kappa = member.kappa().value;
  const CMatrix cp = chi_kappa(kappa, +1);
  const CMatrix cm = chi_kappa(kappa, -1);
  const GridFunction fp = spectral_map_u(*space, +1, u);
  const GridFunction fm = spectral_map_u(*space, -1, u);
  const int n = space->size();
  GridFunction ym(n, space->rank()), yp(n, space->rank());
  for (int j = 0; j < n; ++j) {
    const CVector c = theta_prime_lower(*space, j, kappa)
                          .completeOrthogonalDecomposition()
                          .solve(CVector(fp.row(j).transpose()));
    const CVector d = theta_upper(*space, j, kappa)
                          .completeOrthogonalDecomposition()
                          .solve(CVector(fm.row(j).transpose()));
    ym.row(j) = (cm * (c - d)).transpose();
    yp.row(j) = (-cp * (c - d)).transpose();
  }
  return model_from_pair(std::move(space), ym, yp);
}

double new_representation_residual(std::shared_ptr<const ModelSpace> space,
                                   const FamilyMember& member, const CVector& u, cplx z) {
  const auto r = member.rank();
  const DilationVector hz{ChannelFunction(HalfLine::Negative, r), apply_resolvent(member, z, u),
                          ChannelFunction(HalfLine::Positive, r)};
  const ModelVector lhs = map_Phi(space, hz);
  const ModelVector ru = smooth_representative(space, member, u);
  const double scale = model_norm(lhs);
  const double diff = model_norm(lhs - project_to_K(ru.divided_by(z)));
  return scale > 0.0 ? diff / scale : diff;
}

ScatteringPair ScatteringPair::from_target(const FamilyMember& target) {
  return {target.with_kappa(KappaParameter::zero(target.rank())), target};
}

WaveModelResult wave_operator_model(const ModelVector& x) {
  const auto& space = *x.space;
  const auto r = space.rank();
  const CMatrix id = CMatrix::Identity(r, r);
  WaveModelResult out{x, {}};
  for (int j = 0; j < space.size(); ++j) {
    const CMatrix& s = space.s_at(j);
    const CMatrix lhs = id + s;
    const CVector g = x.g.row(j).transpose();
    if (!(condition_number(lhs) <= kSpectralConditionLimit)) {
      out.exceptional_points.push_back(space.grid().k(j));
      out.value.g_tilde.row(j).setZero();
      continue;
    }
    out.value.g_tilde.row(j) = (-lhs.partialPivLu().solve((id + s.adjoint()) * g)).transpose();
  }
  return out;
}

WaveModelResult wave_operator_model(std::shared_ptr<const ModelSpace> space,
                                    const ScatteringPair& pair, const CVector& u) {
  return wave_operator_model(smooth_representative(std::move(space), pair.target, u));
}

double wave_intertwining_residual(std::shared_ptr<const ModelSpace> space,
                                  const ScatteringPair& pair, const CVector& u, cplx z) {
  const ModelVector lhs =
      project_to_K(wave_operator_model(space, pair, apply_resolvent(pair.target, z, u)).value);
  const ModelVector wu = project_to_K(wave_operator_model(space, pair, u).value);
  const ModelVector rhs = model_resolvent(pair.reference, z, wu);
  const double scale = model_norm(lhs);
  const double diff = model_norm(lhs - rhs);
  return scale > 0.0 ? diff / scale : diff;
}

WaveTimeResult wave_operator_time(const ScatteringPair& pair, const CVector& u,
                                  const std::vector<double>& t_ladder) {
  if (u.size() != pair.target.dim()) throw InputError("vector has the wrong dimension");
  for (std::size_t i = 1; i < t_ladder.size(); ++i) {
    if (!(t_ladder[i] > t_ladder[i - 1])) throw InputError("time ladder must increase");
  }
  const CMatrix a = pair.reference.dense();
  const CMatrix l = pair.target.dense();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (a + a.adjoint()));
  WaveTimeResult out;
  out.times = t_ladder;
  out.approximants.resize(t_ladder.size());
  parallel_for(t_ladder.size(), [&](std::size_t i) {
    const double t = -t_ladder[i];
    const CMatrix gen = cplx(0.0, -t) * l;
    const CVector evolved = gen.exp() * u;
    CVector phases(es.eigenvalues().size());
    for (Eigen::Index p = 0; p < phases.size(); ++p) {
      phases(p) = std::exp(cplx(0.0, t * es.eigenvalues()(p)));
    }
    out.approximants[i] =
        es.eigenvectors() * phases.asDiagonal() * (es.eigenvectors().adjoint() * evolved);
  });
  for (std::size_t i = 1; i < out.approximants.size(); ++i) {
    out.increments.push_back((out.approximants[i] - out.approximants[i - 1]).norm());
  }
  const std::size_t m = out.increments.size();
  if (m >= 2 && out.increments[m - 1] >= out.increments[m - 2] &&
      out.increments[m - 1] > 1e-8 * std::max(1.0, u.norm())) {
    out.converged = false;
    out.note = "no numerical limit at this resolution";
  }
  return out;
}

SingularReport singular_report(const FamilyMember& member, const std::vector<cplx>& z_samples,
                               const std::vector<double>& k_grid) {
  if (!member.kappa().is_i_j() || !member.kappa().j) {
    throw InputError("singular_report needs kappa = iJ");
  }
  const SignatureProjections sig = SignatureProjections::from_j(*member.kappa().j);
  const CMatrix& cp = sig.chi_plus;
  const CMatrix& cm = sig.chi_minus;
  SingularReport rep;
  for (cplx z : z_samples) {
    if (z.imag() == 0.0) continue;
    const CMatrix theta = eval_charfn(member, FunctionKind::Theta, z);
    rep.det_theta.emplace_back(z, theta.determinant());
    if (z.imag() > 0.0) {
      const CMatrix s = characteristic_function(member, z);
      const CMatrix f = (cm + cp * s) * guarded_inverse(cp + cm * s, kSpectralConditionLimit,
                                                        "factorization pencil singular");
      rep.factorization_upper = std::max(rep.factorization_upper, operator_norm(theta - f));
    } else {
      const CMatrix s = characteristic_function(member, std::conj(z)).adjoint();
      const CMatrix f = (cp + cm * s) * guarded_inverse(cm + cp * s, kSpectralConditionLimit,
                                                        "factorization pencil singular");
      rep.factorization_lower = std::max(rep.factorization_lower, operator_norm(theta - f));
    }
  }
  const bool matrix = member.backend().kind() == OperatorBackend::Kind::Matrix;
  const std::vector<double> heights = {1e-3, 1e-1, 1.0, 10.0};
  for (double k : k_grid) {
    std::vector<cplx> pts;
    if (matrix) pts.emplace_back(k, 0.0);
    for (double h : heights) pts.emplace_back(k, h);
    for (cplx z : pts) {
      CMatrix s;
      try {
        s = characteristic_function(member, z);
      } catch (const Error&) {
        if (z.imag() != 0.0) throw;
        continue;  // real point on a pole of (A - k)^{-1}; S is sampled above it
      }
      rep.separability_sup = std::max(
          {rep.separability_sup, operator_norm(cp * s * cm), operator_norm(cm * s * cp)});
    }
  }
  rep.separability_margin = 1.0 - rep.separability_sup;
  return rep;
}

}  // namespace funcmodel
