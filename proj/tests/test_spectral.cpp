#include <gtest/gtest.h>

#include "funcmodel/charfn.hpp"
#include "funcmodel/spectral.hpp"
#include "test_util.hpp"

using namespace funcmodel;
using P = KappaParameter::Preset;

namespace {

DilationVector k_vector(const FamilyMember& m, const CVector& u) {
  return {ChannelFunction(HalfLine::Negative, m.rank()), u,
          ChannelFunction(HalfLine::Positive, m.rank())};
}

class MatrixSpectral : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    member_ = new FamilyMember(fmtest::matrix_member(4, 2, 41, P::IJ, fmtest::diag_j({1, -1})));
    space_ = new std::shared_ptr<const ModelSpace>(
        std::make_shared<ModelSpace>(*member_, AxisGrid::cayley(2048)));
  }
  static void TearDownTestSuite() {
    delete space_;
    delete member_;
  }
  const FamilyMember& member() const { return *member_; }
  std::shared_ptr<const ModelSpace> space() const { return *space_; }

  static FamilyMember* member_;
  static std::shared_ptr<const ModelSpace>* space_;
};

FamilyMember* MatrixSpectral::member_ = nullptr;
std::shared_ptr<const ModelSpace>* MatrixSpectral::space_ = nullptr;

}  // namespace

TEST_F(MatrixSpectral, ModelTheoremForEveryKappa) {
  std::mt19937_64 rng(1);
  const CVector u = fmtest::random_vector(4, rng);
  const ModelVector xu = map_Phi(space(), k_vector(member(), u));
  const std::vector<FamilyMember> members = {member().with_kappa(KappaParameter::zero(2)),
                                             member().dissipative(), member().anti_dissipative(),
                                             member()};
  for (const auto& m : members) {
    for (cplx z0 : {cplx(0.3, -0.8), cplx(-0.5, 1.1)}) {
      const ModelVector lhs = model_resolvent(m, z0, xu);
      const ModelVector ref = map_Phi(space(), k_vector(m, apply_resolvent(m, z0, u)));
      EXPECT_LT(model_norm(lhs - ref) / model_norm(ref), 1e-2) << z0;
    }
  }
}

TEST_F(MatrixSpectral, FpmIdentities) {
  std::mt19937_64 rng(2);
  const CVector u = fmtest::random_vector(4, rng);
  for (const auto& m : {member(), member().with_kappa(KappaParameter::zero(2))}) {
    const FpmResidual r = fpm_identity_residual(*space(), m, cplx(0.1, -0.7), u);
    EXPECT_LT(std::max(r.plus, r.minus) / r.scale, 1e-6);
  }
}

TEST_F(MatrixSpectral, EigenvectorsAreOneSided) {
  Eigen::ComplexEigenSolver<CMatrix> es(member().dense());
  const SmoothnessSettings settings;
  int checked = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const cplx lambda = es.eigenvalues()(i);
    if (std::abs(lambda.imag()) < 1e-8) continue;
    const CVector v = es.eigenvectors().col(i);
    const SmoothnessVerdict sv = smooth_membership(*space(), member(), v, settings);
    EXPECT_FALSE(sv.smooth());
    if (lambda.imag() > 0.0) {
      EXPECT_EQ(sv.minus.verdict, Membership::Member) << lambda;
      EXPECT_EQ(sv.plus.verdict, Membership::NonMember) << lambda;
    } else {
      EXPECT_EQ(sv.plus.verdict, Membership::Member) << lambda;
      EXPECT_EQ(sv.minus.verdict, Membership::NonMember) << lambda;
    }
    EXPECT_GE(new_representation_residual(space(), member(), v, cplx(0.2, 0.9)), 1e-1);
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST_F(MatrixSpectral, SelfAdjointEigenvectorsAreNotSmooth) {
  const FamilyMember sa = member().with_kappa(KappaParameter::zero(2));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sa.dense());
  const CVector v = es.eigenvectors().col(0);
  const SmoothnessVerdict sv = smooth_membership(*space(), sa, v, SmoothnessSettings{});
  EXPECT_EQ(sv.plus.verdict, Membership::NonMember);
  EXPECT_EQ(sv.minus.verdict, Membership::NonMember);
}

TEST_F(MatrixSpectral, FactorizationAndSeparability) {
  std::vector<cplx> zs = {cplx(0.2, 0.5), cplx(-1.0, 1.5), cplx(0.4, -0.6), cplx(1.3, -2.0)};
  std::vector<double> ks;
  for (int i = 0; i <= 20; ++i) ks.push_back(-3.0 + 0.3 * i);
  const SingularReport sr = singular_report(member(), zs, ks);
  EXPECT_LT(sr.factorization_upper, 1e-8);
  EXPECT_LT(sr.factorization_lower, 1e-8);
  EXPECT_GT(sr.separability_margin, 0.0);
}

TEST(Spectral, SingularReportNeedsIJ) {
  const FamilyMember m = fmtest::matrix_member(3, 1, 2, P::PlusI);
  EXPECT_THROW(singular_report(m, {cplx(0.0, 1.0)}, {0.0}), InputError);
}

TEST(Spectral, SmoothnessSettingsValidation) {
  SmoothnessSettings s;
  s.hardy_member = 0.5;
  s.hardy_non_member = 0.1;
  EXPECT_THROW(s.validate(), InputError);
}

TEST(Spectral, UnperturbedWaveOperatorIsIdentity) {
  const FamilyMember m = fmtest::matrix_member(5, 2, 3, P::Zero);
  std::mt19937_64 rng(4);
  const CVector u = fmtest::random_vector(5, rng);
  const ScatteringPair pair = ScatteringPair::from_target(m);
  const WaveTimeResult w = wave_operator_time(pair, u, {50.0, 200.0});
  for (const auto& a : w.approximants) EXPECT_LT((a - u).norm(), 1e-10 * u.norm());
}

class FriedrichsSpectral : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    member_ = new FamilyMember(fmtest::friedrichs_member(128));
    space_ = new std::shared_ptr<const ModelSpace>(
        std::make_shared<ModelSpace>(*member_, AxisGrid::cayley(1024)));
  }
  static void TearDownTestSuite() {
    delete space_;
    delete member_;
  }
  static FamilyMember* member_;
  static std::shared_ptr<const ModelSpace>* space_;
};

FamilyMember* FriedrichsSpectral::member_ = nullptr;
std::shared_ptr<const ModelSpace>* FriedrichsSpectral::space_ = nullptr;

TEST_F(FriedrichsSpectral, SmoothVectorsAndNewRepresentation) {
  std::mt19937_64 rng(5);
  const CVector u = fmtest::smooth_friedrichs_vector(*member_, rng);
  EXPECT_TRUE(smooth_membership(**space_, *member_, u, SmoothnessSettings{}).smooth());
  for (cplx z : {cplx(0.3, -0.6), cplx(-0.2, 0.8)}) {
    EXPECT_LT(new_representation_residual(*space_, *member_, u, z), 1e-2) << z;
  }
}

TEST_F(FriedrichsSpectral, SmoothRepresentativeProjectsToPhi) {
  std::mt19937_64 rng(6);
  const CVector u = fmtest::smooth_friedrichs_vector(*member_, rng);
  const ModelVector phi = map_Phi(*space_, k_vector(*member_, u));
  const ModelVector rep = project_to_K(smooth_representative(*space_, *member_, u));
  EXPECT_LT(model_norm(rep - phi) / model_norm(phi), 1e-4);
}

TEST_F(FriedrichsSpectral, WaveOperatorStationaryMatchesTime) {
  std::mt19937_64 rng(7);
  const ScatteringPair pair = ScatteringPair::from_target(*member_);
  const CVector u = fmtest::smooth_friedrichs_vector(*member_, rng);
  const WaveModelResult wm = wave_operator_model(*space_, pair, u);
  const WaveTimeResult wt = wave_operator_time(pair, u, {100.0, 200.0});
  for (int i = 0; i < 2; ++i) {
    const CVector v = i == 0 ? u : fmtest::smooth_friedrichs_vector(*member_, rng);
    const ModelVector xv = map_Phi(*space_, k_vector(*member_, v));
    const cplx stationary = model_inner(xv, wm.value);
    const cplx timed = v.dot(wt.approximants.back());
    EXPECT_LT(std::abs(stationary - timed) / (v.norm() * u.norm()), 5e-2);
  }
  EXPECT_LT(wave_intertwining_residual(*space_, pair, u, cplx(0.1, -0.7)), 1e-2);
}
