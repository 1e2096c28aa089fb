#include "funcmodel/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "funcmodel/charfn.hpp"
#include "funcmodel/dilation.hpp"
#include "funcmodel/modelspace.hpp"
#include "funcmodel/pg.hpp"
#include "funcmodel/spectral.hpp"

namespace funcmodel {
namespace {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t = {
      {"charfn.contractive", 1e-10},  {"charfn.strauss", 1e-9},
      {"charfn.inner", 1e-8},         {"charfn.j_contractive", 1e-10},
      {"charfn.boundary", 1e-6},      {"pg.roundtrip", 1e-10},
      {"pg.proposition", 1e-8},       {"dilation.compress", 1e-8},
      {"dilation.adjoint", 1e-8},     {"dilation.symmetry", 1e-9},
      {"dilation.residual", 1e-8},    {"model.hardy", 1e-10},
      {"model.projection", 1e-6},     {"model.isometry", 1e-3},
      {"model.intertwining", 1e-3},   {"model.theorem", 1e-2},
      {"model.fpm", 1e-6},            {"smooth.classification", 0.5},
      {"smooth.new_rep", 1e-2},       {"smooth.new_rep_fail", 1e-1},
      {"scatter.time", 5e-2},         {"scatter.intertwining", 1e-2},
      {"scatter.identity", 1e-10},    {"singular.factorization", 1e-8},
      {"singular.margin", 1e-12},
  };
  return t;
}

std::string describe(cplx z) {
  std::ostringstream s;
  s.precision(17);
  s << '(' << z.real() << ',' << z.imag() << ')';
  return s.str();
}

class Suite {
 public:
  Suite(const Problem& pr, Report& rep, std::uint64_t seed)
      : pr_(pr), rep_(rep), rng_(seed), member_(build_family(pr.family)) {
    const auto& b = member_.backend();
    if (b.kind() == OperatorBackend::Kind::Friedrichs) {
      lo_ = b.lower();
      hi_ = b.upper();
    } else {
      lo_ = b.eigenvalues().minCoeff();
      hi_ = b.eigenvalues().maxCoeff();
    }
    if (hi_ - lo_ < 1.0) {
      const double c = 0.5 * (lo_ + hi_);
      lo_ = c - 0.5;
      hi_ = c + 0.5;
    }
  }

  void charfn();
  void pg();
  void dilation();
  void model();
  void smooth();
  void scatter();
  void singular();

 private:
  bool friedrichs() const {
    return member_.backend().kind() == OperatorBackend::Kind::Friedrichs;
  }
  bool has_j() const { return member_.kappa().is_i_j() && member_.kappa().j.has_value(); }

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }

  cplx sample_z(int sign) {
    const double w = hi_ - lo_;
    return {uniform(lo_ - 0.25 * w, hi_ + 0.25 * w), sign * uniform(0.2, 1.5) * w};
  }

  CVector random_e(Eigen::Index r) {
    CVector v(r);
    for (auto& c : v) c = cplx(normal(), normal());
    return v;
  }

  /// Random K-vector; on the Friedrichs backend a smooth function vanishing
  /// at the interval ends.
  CVector random_k() {
    const auto n = member_.dim();
    CVector u(n);
    if (!friedrichs()) {
      for (auto& c : u) c = cplx(normal(), normal());
      return u;
    }
    std::vector<cplx> coef(5);
    for (auto& c : coef) c = cplx(normal(), normal());
    const auto& x = member_.backend().rule().nodes;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double t = (2.0 * x(j) - lo_ - hi_) / (hi_ - lo_);
      cplx acc = 0.0;
      for (std::size_t i = coef.size(); i-- > 0;) acc = acc * t + coef[i];
      u(j) = (1.0 - t * t) * acc;
    }
    return member_.backend().to_flat(u);
  }

  double tol(const std::string& key) const { return tolerance_for(pr_, key); }

  void check(const std::string& name, const std::string& key, const std::string& inputs,
             const std::function<double()>& fn, bool at_least = false) {
    const std::string digest_input = pr_.canonical + '|' + name + '|' + inputs;
    try {
      rep_.add(name, digest_input, fn(), tol(key), {}, at_least);
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      rep_.add_error(name, digest_input, tol(key), e.what());
    }
  }

  std::shared_ptr<const ModelSpace> space() {
    if (!space_) {
      space_ = std::make_shared<ModelSpace>(member_, AxisGrid::cayley(pr_.grid.n, pr_.grid.scale));
    }
    return space_;
  }

  DilationVector k_vector(const CVector& u) const {
    const auto r = member_.rank();
    return {ChannelFunction(HalfLine::Negative, r), u, ChannelFunction(HalfLine::Positive, r)};
  }

  /// Smooth channel data vanishing at the origin plus a K-part.
  DilationVector random_dilation_vector() {
    const auto r = member_.rank();
    DilationVector h = k_vector(random_k());
    h.v_minus.add_term({cplx(uniform(0.5, 1.5), uniform(-1, 1)), {CVector::Zero(r), random_e(r)}});
    h.v_plus.add_term({cplx(-uniform(0.5, 1.5), uniform(-1, 1)), {CVector::Zero(r), random_e(r)}});
    return h;
  }

  const Problem& pr_;
  Report& rep_;
  std::mt19937_64 rng_;
  FamilyMember member_;
  double lo_ = -1.0;
  double hi_ = 1.0;
  std::shared_ptr<const ModelSpace> space_;
};

void Suite::charfn() {
  const auto r = member_.rank();
  std::vector<cplx> zs;
  for (int i = 0; i < 20; ++i) zs.push_back(sample_z(+1));
  check("charfn.S_contractive", "charfn.contractive", "20 z in C+", [&] {
    const auto rep = contractivity_report(member_, FunctionKind::S, zs);
    return std::max(0.0, rep.max_norm - 1.0);
  });
  if (has_j()) {
    check("charfn.Theta_J_contractive", "charfn.j_contractive", "20 z in C+", [&] {
      const auto rep = contractivity_report(member_, FunctionKind::Theta, zs);
      return std::max(0.0, -rep.min_j_form_eigenvalue);
    });
  }
  for (int i = 0; i < 10; ++i) {
    cplx z = sample_z(+1);
    if (friedrichs()) z = cplx(z.real(), std::max(z.imag(), 0.5 * (hi_ - lo_)));
    const CVector f = random_k();
    check("charfn.strauss", "charfn.strauss", describe(z), [&] {
      return strauss_relation_check(member_, z, f) / std::max(1.0, f.norm());
    });
  }
  // Matrix backend: S is inner. Friedrichs: S(k + i0) is a strict contraction
  // on the support of A and unitary off it.
  const std::string inner_name =
      friedrichs() ? "charfn.unitary_off_support" : "charfn.inner_boundary";
  check(inner_name, "charfn.inner", "50 real k", [&] {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      double k = lo_ - 1.0 + (hi_ - lo_ + 2.0) * i / 49.0;
      if (friedrichs()) {
        const double off = 0.05 + 2.0 * (i / 2) / 25.0;
        k = (i % 2 == 0) ? hi_ + off : lo_ - off;
      }
      const CMatrix s = eval_charfn_at(member_, FunctionKind::S, cplx(k, 0.0), BoundarySide::None);
      worst = std::max(worst, operator_norm(s.adjoint() * s - CMatrix::Identity(r, r)));
    }
    return worst;
  });
  if (!friedrichs() && pr_.boundary.method == BoundaryValueSettings::Method::Ladder) {
    for (int i = 0; i < 5; ++i) {
      const double k = uniform(lo_, hi_);
      check("charfn.boundary_ladder", "charfn.boundary", describe(k), [&] {
        const auto bv = boundary_value(member_, FunctionKind::S, k, pr_.boundary);
        const CMatrix direct = eval_charfn(member_, FunctionKind::S, cplx(k, 0.0));
        return operator_norm(bv.value - direct);
      });
    }
  }
}

void Suite::pg() {
  const auto r = member_.rank();
  const CMatrix j = has_j() ? *member_.kappa().j : CMatrix::Identity(r, r);
  const SignatureProjections sig = SignatureProjections::from_j(j);
  const FamilyMember jm = member_.with_kappa(KappaParameter::i_j(j));
  double worst_s = 0.0, worst_t = 0.0;
  std::string err;
  check("pg.roundtrip_S", "pg.roundtrip", "50 S samples", [&] {
    for (int i = 0; i < 50; ++i) {
      const CMatrix s = eval_charfn(member_, FunctionKind::S, sample_z(+1));
      worst_s = std::max(worst_s, operator_norm(pg_forward(pg_inverse(s, sig), sig) - s));
    }
    return worst_s;
  });
  check("pg.roundtrip_Theta", "pg.roundtrip", "50 Theta samples", [&] {
    for (int i = 0; i < 50; ++i) {
      const CMatrix th = eval_charfn(jm, FunctionKind::Theta, sample_z(+1));
      worst_t = std::max(worst_t, operator_norm(pg_inverse(pg_forward(th, sig), sig) - th));
    }
    return worst_t;
  });
  check("pg.proposition", "pg.proposition", "20 z in C+", [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const cplx z = sample_z(+1);
      const CMatrix th = eval_charfn(jm, FunctionKind::Theta, z);
      const CMatrix s = eval_charfn(jm, FunctionKind::S, z);
      worst = std::max(worst, operator_norm(pg_forward(th, sig) - s));
    }
    return worst;
  });
}

void Suite::dilation() {
  const FamilyMember d = member_.dissipative();
  for (int i = 0; i < 10; ++i) {
    const cplx z = sample_z(-1);
    const CVector u = random_k();
    check("dilation.compression", "dilation.compress", describe(z),
          [&] { return dilation_compress_check(d, z, u); });
    check("dilation.adjoint_compression", "dilation.adjoint", describe(std::conj(z)),
          [&] { return dilation_adjoint_compress_check(d, std::conj(z), u); });
  }
  for (int i = 0; i < 5; ++i) {
    const DilationVector g = close_boundary(d, random_dilation_vector());
    const DilationVector h = close_boundary(d, random_dilation_vector());
    check("dilation.symmetry", "dilation.symmetry", std::to_string(i), [&] {
      const cplx lhs = dilation_apply(d, g).inner(h);
      const cplx rhs = g.inner(dilation_apply(d, h));
      return std::abs(lhs - rhs) / std::max(1.0, g.norm() * h.norm());
    });
  }
  for (int sign : {-1, +1}) {
    const cplx z = sample_z(sign);
    const DilationVector f = random_dilation_vector();
    check("dilation.resolvent_residual", "dilation.residual", describe(z), [&] {
      const DilationVector g = dilation_resolvent(d, z, f);
      return (dilation_apply(d, g) - g * z - f).norm() / f.norm();
    });
  }
}

void Suite::model() {
  const auto sp = space();
  const auto& grid = sp->grid();
  const auto r = member_.rank();
  check("model.hardy_partition", "model.hardy", "random grid function", [&] {
    GridFunction f(grid.n, r);
    for (int j = 0; j < grid.n; ++j) {
      f.row(j) = (random_e(r) / cplx(grid.k(j), 1.0)).transpose();
    }
    const GridFunction s = sp->projector().project(+1, f) + sp->projector().project(-1, f);
    return grid_norm(grid, s - f) / grid_norm(grid, f);
  });
  check("model.weight_psd", "model.hardy", "grid", [&] {
    return std::max(0.0, -sp->min_weight_eigenvalue());
  });

  const DilationVector h = random_dilation_vector();
  const ModelVector x = map_Phi(sp, h);
  check("model.isometry", "model.isometry", "random h", [&] {
    return std::abs(model_norm(x) - h.norm()) / h.norm();
  });
  check("model.projection_idempotent", "model.projection", "Phi h", [&] {
    const ModelVector p = project_to_K(x);
    return model_norm(project_to_K(p) - p) / model_norm(x);
  });
  const FamilyMember d = member_.dissipative();
  for (int sign : {-1, +1}) {
    const cplx z = sample_z(sign);
    check("model.intertwining", "model.intertwining", describe(z), [&] {
      const ModelVector lhs = map_Phi(sp, dilation_resolvent(d, z, h));
      const ModelVector rhs = x.divided_by(z);
      return model_norm(lhs - rhs) / model_norm(rhs);
    });
  }

  std::vector<FamilyMember> members = {member_.with_kappa(KappaParameter::zero(r)),
                                       member_.dissipative(), member_.anti_dissipative()};
  if (!member_.kappa().is_zero() && !member_.kappa().is_plus_i() && !member_.kappa().is_minus_i()) {
    members.push_back(member_);
  }
  const CVector u = random_k();
  const ModelVector xu = map_Phi(sp, k_vector(u));
  for (const auto& m : members) {
    const std::string kname = m.kappa().is_zero()     ? "0"
                              : m.kappa().is_plus_i()  ? "iI"
                              : m.kappa().is_minus_i() ? "-iI"
                              : m.kappa().is_i_j()     ? "iJ"
                                                       : "custom";
    for (int sign : {-1, +1}) {
      for (int i = 0; i < 5; ++i) {
        const cplx z0 = sample_z(sign);
        check("model.theorem[kappa=" + kname + "]", "model.theorem", describe(z0), [&] {
          const ModelVector lhs = model_resolvent(m, z0, xu);
          const ModelVector ref = map_Phi(sp, k_vector(apply_resolvent(m, z0, u)));
          return model_norm(lhs - ref) / model_norm(ref);
        });
      }
    }
    for (int i = 0; i < 2; ++i) {
      const cplx z0 = sample_z(-1);
      check("model.fpm[kappa=" + kname + "]", "model.fpm", describe(z0), [&] {
        const FpmResidual res = fpm_identity_residual(*sp, m, z0, u);
        return std::max(res.plus, res.minus) / res.scale;
      });
    }
  }
}

void Suite::smooth() {
  const auto sp = space();
  const auto r = member_.rank();
  const SmoothnessSettings settings;
  const std::vector<cplx> zs = {sample_z(-1), sample_z(+1)};
  if (!friedrichs()) {
    Eigen::ComplexEigenSolver<CMatrix> es(member_.dense());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const cplx lambda = es.eigenvalues()(i);
      const CVector v = es.eigenvectors().col(i);
      if (member_.alpha().to_e(v).norm() < 1e-8 * v.norm()) continue;
      if (std::abs(lambda.imag()) < 1e-8) continue;
      check("smooth.one_sided", "smooth.classification", describe(lambda), [&] {
        const SmoothnessVerdict sv = smooth_membership(*sp, member_, v, settings);
        const bool ok = lambda.imag() > 0.0
                            ? (sv.minus.verdict == Membership::Member &&
                               sv.plus.verdict == Membership::NonMember)
                            : (sv.plus.verdict == Membership::Member &&
                               sv.minus.verdict == Membership::NonMember);
        return ok ? 0.0 : 1.0;
      });
      for (cplx z : zs) {
        check("smooth.new_representation_fails", "smooth.new_rep_fail", describe(z),
              [&] { return new_representation_residual(sp, member_, v, z); }, true);
      }
    }
    const FamilyMember sa = member_.with_kappa(KappaParameter::zero(r));
    Eigen::SelfAdjointEigenSolver<CMatrix> hs(0.5 * (sa.dense() + sa.dense().adjoint()));
    for (Eigen::Index i = 0; i < hs.eigenvalues().size(); ++i) {
      const CVector v = hs.eigenvectors().col(i);
      if (member_.alpha().to_e(v).norm() < 1e-8) continue;
      check("smooth.self_adjoint_eigenvector", "smooth.classification",
            describe(hs.eigenvalues()(i)), [&] {
              const SmoothnessVerdict sv = smooth_membership(*sp, sa, v, settings);
              return sv.plus.verdict == Membership::NonMember &&
                             sv.minus.verdict == Membership::NonMember
                         ? 0.0
                         : 1.0;
            });
    }
    return;
  }
  for (int i = 0; i < 2; ++i) {
    const CVector u = random_k();
    check("smooth.friedrichs_smooth", "smooth.classification", std::to_string(i), [&] {
      return smooth_membership(*sp, member_, u, settings).smooth() ? 0.0 : 1.0;
    });
    for (cplx z : zs) {
      check("smooth.new_representation", "smooth.new_rep", describe(z),
            [&] { return new_representation_residual(sp, member_, u, z); });
    }
  }
}

void Suite::scatter() {
  const ScatteringPair pair = ScatteringPair::from_target(member_);
  const CVector u = random_k();
  const std::vector<double> ladder = {50.0, 100.0, 200.0};
  check("scatter.kappa0_identity", "scatter.identity", "T = 50,100,200", [&] {
    const ScatteringPair trivial = ScatteringPair::from_target(pair.reference);
    const WaveTimeResult w = wave_operator_time(trivial, u, ladder);
    double worst = 0.0;
    for (const auto& a : w.approximants) worst = std::max(worst, (a - u).norm() / u.norm());
    return worst;
  });
  if (!friedrichs()) return;
  const auto sp = space();
  check("scatter.stationary_vs_time", "scatter.time", "T = 200", [&] {
    const WaveModelResult wm = wave_operator_model(sp, pair, u);
    const WaveTimeResult wt = wave_operator_time(pair, u, ladder);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      const CVector v = i == 0 ? u : random_k();
      const ModelVector xv = map_Phi(sp, k_vector(v));
      const cplx stationary = model_inner(xv, wm.value);
      const cplx timed = v.dot(wt.approximants.back());
      worst = std::max(worst, std::abs(stationary - timed) / (v.norm() * u.norm()));
    }
    return worst;
  });
  for (int sign : {-1, +1}) {
    const cplx z = sample_z(sign);
    check("scatter.intertwining", "scatter.intertwining", describe(z),
          [&] { return wave_intertwining_residual(sp, pair, u, z); });
  }
}

void Suite::singular() {
  if (!has_j()) throw InputError("singular-check needs kappa = iJ");
  std::vector<cplx> zs;
  for (int i = 0; i < 10; ++i) zs.push_back(sample_z(i % 2 == 0 ? +1 : -1));
  std::vector<double> ks;
  for (int i = 0; i < 41; ++i) ks.push_back(lo_ - 1.0 + (hi_ - lo_ + 2.0) * i / 40.0);
  SingularReport sr;
  try {
    sr = singular_report(member_, zs, ks);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    rep_.add_error("singular.report", pr_.canonical, tol("singular.factorization"), e.what());
    return;
  }
  check("singular.factorization_upper", "singular.factorization", "10 z",
        [&] { return sr.factorization_upper; });
  check("singular.factorization_lower", "singular.factorization", "10 z",
        [&] { return sr.factorization_lower; });
  check("singular.separability_margin", "singular.margin", "41 k x 4 heights",
        [&] { return sr.separability_margin; }, true);
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "charfn", "pg-check", "dilation-check", "model-check", "smooth", "scatter", "singular-check", "all"};
  return names;
}

double tolerance_for(const Problem& problem, const std::string& key) {
  if (auto it = problem.tolerances.find(key); it != problem.tolerances.end()) return it->second;
  return default_tolerances().at(key);
}

Report run_command(const std::string& name, const Problem& problem, const RunOptions& options) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw InputError("unknown command '" + name + "'");
  }
  if (!(options.tol_scale > 0.0)) throw InputError("tol-scale must be positive");
  Report rep;
  rep.problem = problem.name;
  rep.command = name;
  rep.seed = options.seed.value_or(problem.seed);
  rep.tol_scale = options.tol_scale;
  Suite suite(problem, rep, rep.seed);
  const bool all = name == "all";
  if (all || name == "charfn") suite.charfn();
  if (all || name == "pg-check") suite.pg();
  if (all || name == "dilation-check") suite.dilation();
  if (all || name == "model-check") suite.model();
  if (all || name == "smooth") suite.smooth();
  if (all || name == "scatter") suite.scatter();
  if (name == "singular-check" || (all && problem.family.kappa.preset == KappaParameter::Preset::IJ)) {
    suite.singular();
  }
  return rep;
}

}  // namespace funcmodel
