#include <gtest/gtest.h>

#include <numbers>

#include "funcmodel/hardy.hpp"
#include "funcmodel/modelspace.hpp"
#include "test_util.hpp"

using namespace funcmodel;
using P = KappaParameter::Preset;

namespace {

GridFunction pole(const AxisGrid& g, cplx z0) {
  GridFunction f(g.n, 1);
  for (int j = 0; j < g.n; ++j) f(j, 0) = 1.0 / (g.k(j) - z0);
  return f;
}

DilationVector channel_vector(const FamilyMember& m, std::mt19937_64& rng, bool minus, bool plus) {
  const auto r = m.rank();
  DilationVector h{ChannelFunction(HalfLine::Negative, r), CVector::Zero(m.dim()),
                   ChannelFunction(HalfLine::Positive, r)};
  if (minus) h.v_minus.add_term({cplx(0.9, 0.4), {CVector::Zero(r), fmtest::random_vector(r, rng)}});
  if (plus) h.v_plus.add_term({cplx(-1.3, -0.2), {CVector::Zero(r), fmtest::random_vector(r, rng)}});
  return h;
}

}  // namespace

TEST(AxisGrid, Validation) {
  EXPECT_THROW(AxisGrid::cayley(1000), InputError);
  EXPECT_THROW(AxisGrid::cayley(128), InputError);
  EXPECT_THROW(AxisGrid::cayley(512, 0.0), InputError);
  const AxisGrid g = AxisGrid::cayley(512, 2.0);
  double s = 0.0;
  for (int j = 0; j < g.n; ++j) s += g.w(j) / (4.0 + g.k(j) * g.k(j));
  EXPECT_NEAR(s, std::numbers::pi / 2.0, 1e-12);
}

TEST(Hardy, PartialFractionExamples) {
  const AxisGrid g = AxisGrid::cayley(2048);
  const HardyProjector p(g);
  const cplx lower(0.3, -0.7), upper(-1.0, 2.0);
  const GridFunction fp = pole(g, lower);  // analytic in C+
  const GridFunction fm = pole(g, upper);  // analytic in C-
  const GridFunction f = fp + 2.0 * fm;
  EXPECT_LT(grid_norm(g, p.project(+1, f) - fp) / grid_norm(g, fp), 1e-6);
  EXPECT_LT(grid_norm(g, p.project(-1, f) - 2.0 * fm) / grid_norm(g, fm), 1e-6);
  EXPECT_LT(grid_norm(g, p.project(-1, fp)) / grid_norm(g, fp), 1e-6);
}

TEST(Hardy, ProjectionsArePartitionOfUnity) {
  const AxisGrid g = AxisGrid::cayley(1024);
  const HardyProjector p(g);
  std::mt19937_64 rng(3);
  GridFunction f(g.n, 2);
  for (int j = 0; j < g.n; ++j) f.row(j) = (fmtest::random_vector(2, rng) / cplx(g.k(j), 1.0)).transpose();
  const GridFunction s = p.project(+1, f) + p.project(-1, f);
  EXPECT_LT(grid_norm(g, s - f) / grid_norm(g, f), 1e-10);
  const GridFunction pp = p.project(+1, f);
  EXPECT_LT(grid_norm(g, p.project(+1, pp) - pp) / grid_norm(g, pp), 1e-10);
  EXPECT_LT(std::abs(grid_inner(g, pp, p.project(-1, f))), 1e-10 * grid_norm(g, f) * grid_norm(g, f));
}

TEST(Hardy, ContinuationIntoHalfPlanes) {
  const AxisGrid g = AxisGrid::cayley(2048);
  const HardyProjector p(g);
  const cplx z0(0.5, -0.8);
  const GridFunction f = pole(g, z0);
  for (cplx z : {cplx(0.1, 0.5), cplx(-2.0, 1.5)}) {
    const cplx expected = 1.0 / (z - z0);
    EXPECT_NEAR(std::abs(hardy_continue(g, +1, f, z)(0) - expected), 0.0, 1e-6);
    EXPECT_NEAR(std::abs(p.continue_series(+1, f, z)(0) - expected), 0.0, 1e-6);
  }
  EXPECT_NEAR(std::abs(hardy_continue(g, -1, f, cplx(0.0, -2.0))(0)), 0.0, 1e-6);
}

TEST(ModelSpace, WeightIsPositive) {
  const FamilyMember m = fmtest::matrix_member(6, 3, 1, P::PlusI);
  const ModelSpace sp(m, AxisGrid::cayley(512));
  EXPECT_GE(sp.min_weight_eigenvalue(), -1e-10);
}

class MatrixModel : public ::testing::Test {
 protected:
  void SetUp() override {
    member = fmtest::matrix_member(5, 2, 17, P::PlusI);
    space = std::make_shared<ModelSpace>(member, AxisGrid::cayley(2048));
  }
  FamilyMember member = fmtest::scalar_member(0.0, 0.5, P::PlusI);
  std::shared_ptr<const ModelSpace> space;
};

TEST_F(MatrixModel, ChannelImagesAreClassesOfTransforms) {
  std::mt19937_64 rng(4);
  const auto& g = space->grid();
  const DilationVector dp = channel_vector(member, rng, false, true);
  GridFunction vhat(g.n, member.rank());
  for (int j = 0; j < g.n; ++j) vhat.row(j) = dp.v_plus.fourier(g.k(j)).transpose();
  const ModelVector expected{space, vhat, GridFunction::Zero(g.n, member.rank())};
  const ModelVector image = map_Phi(space, dp);
  EXPECT_LT(model_norm(image - expected) / dp.norm(), 1e-8);
  EXPECT_LT(grid_norm(g, space->projector().project(-1, image.g_minus())) / dp.norm(), 1e-6);
  EXPECT_LT(model_norm(project_to_K(image)) / dp.norm(), 1e-6);

  const DilationVector dm = channel_vector(member, rng, true, false);
  EXPECT_LT(model_norm(project_to_K(map_Phi(space, dm))) / dm.norm(), 1e-6);
}

TEST_F(MatrixModel, PhiIsIsometric) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 3; ++i) {
    DilationVector h = channel_vector(member, rng, true, true);
    h.u = fmtest::random_vector(member.dim(), rng);
    const ModelVector x = map_Phi(space, h);
    EXPECT_LT(std::abs(model_norm(x) - h.norm()) / h.norm(), 1e-3);
    DilationVector k = channel_vector(member, rng, true, true);
    const cplx ip = model_inner(x, map_Phi(space, k));
    EXPECT_LT(std::abs(ip - h.inner(k)), 1e-3 * h.norm() * k.norm());
  }
}

TEST_F(MatrixModel, ProjectionIsIdempotentAndFixesK) {
  std::mt19937_64 rng(6);
  DilationVector h = channel_vector(member, rng, true, true);
  h.u = fmtest::random_vector(member.dim(), rng);
  const ModelVector x = map_Phi(space, h);
  const ModelVector p = project_to_K(x);
  // Grid-limited at N = 2048 (about 7e-6 here, below 1e-6 at N = 8192).
  EXPECT_LT(model_norm(project_to_K(p) - p) / model_norm(x), 5e-5);
  DilationVector k_only{ChannelFunction(HalfLine::Negative, member.rank()), h.u,
                        ChannelFunction(HalfLine::Positive, member.rank())};
  const ModelVector xu = map_Phi(space, k_only);
  EXPECT_LT(model_norm(project_to_K(xu) - xu) / model_norm(xu), 5e-5);
}

TEST_F(MatrixModel, ResolventBecomesDivision) {
  std::mt19937_64 rng(7);
  DilationVector h = channel_vector(member, rng, true, true);
  h.u = fmtest::random_vector(member.dim(), rng);
  const ModelVector x = map_Phi(space, h);
  for (cplx z : {cplx(0.4, -0.9), cplx(-0.3, 1.2)}) {
    const ModelVector lhs = map_Phi(space, dilation_resolvent(member, z, h));
    const ModelVector rhs = x.divided_by(z);
    EXPECT_LT(model_norm(lhs - rhs) / model_norm(rhs), 1e-3) << z;
  }
}

TEST(FriedrichsModel, PhiIsIsometric) {
  const FamilyMember m = fmtest::friedrichs_member(128).dissipative();
  const auto space = std::make_shared<ModelSpace>(m, AxisGrid::cayley(1024));
  std::mt19937_64 rng(8);
  DilationVector h = channel_vector(m, rng, true, true);
  h.u = fmtest::smooth_friedrichs_vector(m, rng);
  EXPECT_LT(std::abs(model_norm(map_Phi(space, h)) - h.norm()) / h.norm(), 1e-3);
}
