#include <gtest/gtest.h>

#include "funcmodel/charfn.hpp"
#include "test_util.hpp"

using namespace funcmodel;
using P = KappaParameter::Preset;

namespace {

std::vector<cplx> upper_samples(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.05, 3.0);
  std::vector<cplx> out;
  for (int i = 0; i < n; ++i) out.emplace_back(re(rng), im(rng));
  return out;
}

}  // namespace

TEST(ScalarCharfn, MatchesClosedForm) {
  const double a = 0.3, v = 0.5;
  const FamilyMember m = fmtest::scalar_member(a, v, P::IJ);
  for (cplx z : upper_samples(10, 1)) {
    const cplx expected = (a - z + kI * v) / (a - z - kI * v);
    EXPECT_NEAR(std::abs(eval_charfn(m, FunctionKind::S, z)(0, 0) - expected), 0.0, 1e-13);
  }
}

TEST(ScalarCharfn, OneThirdAtI) {
  const FamilyMember m = fmtest::scalar_member(0.0, 0.5, P::IJ);
  EXPECT_NEAR(std::abs(eval_charfn(m, FunctionKind::S, kI)(0, 0) - 1.0 / 3.0), 0.0, 1e-14);
}

TEST(ScalarCharfn, NegativePotentialTheta) {
  // V = -v < 0: J = -1, L = a - i v, Theta = 1 - 2iv / (a + iv - z).
  const double a = -0.2, v = 0.4;
  const FamilyMember m = fmtest::scalar_member(a, -v, P::IJ);
  const cplx z(0.7, 0.9);
  const cplx expected = 1.0 - 2.0 * kI * v / (a + kI * v - z);
  EXPECT_NEAR(std::abs(eval_charfn(m, FunctionKind::Theta, z)(0, 0) - expected), 0.0, 1e-13);
}

TEST(Charfn, SIsContractiveAndInner) {
  const FamilyMember m = fmtest::matrix_member(6, 3, 2, P::PlusI);
  const auto rep = contractivity_report(m, FunctionKind::S, upper_samples(20, 3));
  EXPECT_FALSE(rep.violates);
  EXPECT_LE(rep.max_norm, 1.0 + 1e-12);
  for (double k : {-2.5, -0.3, 0.0, 0.8, 4.0}) {
    const CMatrix s = eval_charfn(m, FunctionKind::S, cplx(k, 0.0));
    EXPECT_LT((s.adjoint() * s - CMatrix::Identity(3, 3)).norm(), 1e-10) << k;
  }
}

TEST(Charfn, ThetaIsJContractive) {
  const CMatrix j = fmtest::diag_j({1, -1, 1});
  const FamilyMember m = fmtest::matrix_member(6, 3, 4, P::IJ, j);
  const auto rep = contractivity_report(m, FunctionKind::Theta, upper_samples(20, 5));
  EXPECT_GE(rep.min_j_form_eigenvalue, -1e-12);
  EXPECT_FALSE(rep.violates);
}

TEST(Charfn, ThetaKappaTrivialCases) {
  const FamilyMember m = fmtest::matrix_member(5, 2, 6, P::PlusI);
  const cplx z(0.2, 0.7);
  const CMatrix s = eval_charfn(m, FunctionKind::S, z);
  const CMatrix id = CMatrix::Identity(2, 2);
  EXPECT_LT((eval_charfn(m, FunctionKind::ThetaKappa, z) - s).norm(), 1e-14);
  const FamilyMember minus = m.anti_dissipative();
  EXPECT_LT((eval_charfn(minus, FunctionKind::ThetaKappa, z) - id).norm(), 1e-14);
  const FamilyMember zero = m.with_kappa(KappaParameter::zero(2));
  EXPECT_LT((eval_charfn(zero, FunctionKind::ThetaKappa, z) - 0.5 * (id + s)).norm(), 1e-14);
}

TEST(Charfn, PrimedKindUsesMirroredAdjoint) {
  const FamilyMember m = fmtest::matrix_member(5, 2, 8, P::Zero);
  const cplx z(0.4, -0.6);
  const CMatrix s_bar = eval_charfn(m, FunctionKind::S, std::conj(z));
  const CMatrix id = CMatrix::Identity(2, 2);
  EXPECT_LT((eval_charfn(m, FunctionKind::ThetaKappaPrime, z) - 0.5 * (id + s_bar.adjoint())).norm(),
            1e-14);
}

TEST(Charfn, DomainErrors) {
  const FamilyMember m = fmtest::matrix_member(4, 2, 1, P::PlusI);
  EXPECT_THROW(eval_charfn(m, FunctionKind::S, cplx(0.0, -1.0)), DomainError);
  EXPECT_THROW(eval_charfn(m, FunctionKind::ThetaKappaPrime, cplx(0.0, 1.0)), DomainError);
  EXPECT_THROW(eval_charfn(m, FunctionKind::Theta, cplx(0.0, 1.0)), InputError);
  EXPECT_THROW(function_kind_from_string("Sigma"), InputError);
  EXPECT_EQ(function_kind_from_string("Theta2Prime"), FunctionKind::Theta2Prime);
}

TEST(Charfn, LadderBoundaryValueMatchesRealEvaluation) {
  const FamilyMember m = fmtest::matrix_member(6, 3, 12, P::PlusI);
  BoundaryValueSettings settings;
  for (double k : {-0.7, 0.1, 1.3}) {
    const BoundaryValue bv = boundary_value(m, FunctionKind::S, k, settings);
    EXPECT_TRUE(bv.converged);
    EXPECT_LT((bv.value - eval_charfn(m, FunctionKind::S, cplx(k, 0.0))).norm(), 1e-6) << k;
  }
}

TEST(Charfn, LadderRejectsBadSettings) {
  BoundaryValueSettings s;
  s.eps_ladder = {1e-2, 1e-1};
  EXPECT_THROW(s.validate(), InputError);
  s.eps_ladder = {1e-1};
  EXPECT_THROW(s.validate(), InputError);
}

TEST(Charfn, StraussRelation) {
  std::mt19937_64 rng(7);
  const FamilyMember m = fmtest::matrix_member(6, 3, 13, P::PlusI);
  for (cplx z : upper_samples(10, 9)) {
    const CVector f = fmtest::random_vector(6, rng);
    EXPECT_LT(strauss_relation_check(m, z, f), 1e-9 * f.norm());
  }
}

TEST(FriedrichsCharfn, ContractiveOnSupportUnitaryOffIt) {
  const FamilyMember m = fmtest::friedrichs_member(256);
  BoundaryValueSettings plemelj;
  plemelj.method = BoundaryValueSettings::Method::Plemelj;
  for (double k : {-0.6, 0.0, 0.45}) {
    const CMatrix s = boundary_value(m, FunctionKind::S, k, plemelj).value;
    EXPECT_LE(operator_norm(s), 1.0 + 1e-10);
    const CMatrix near = eval_charfn(m, FunctionKind::S, cplx(k, 1e-6));
    EXPECT_LT((s - near).norm(), 1e-4) << k;
  }
  for (double k : {-1.5, 1.2, 3.0}) {
    const CMatrix s = eval_charfn_at(m, FunctionKind::S, cplx(k, 0.0), BoundarySide::None);
    EXPECT_LT((s.adjoint() * s - CMatrix::Identity(2, 2)).norm(), 1e-10) << k;
  }
}

TEST(FriedrichsCharfn, RealPointRejected) {
  const FamilyMember m = fmtest::friedrichs_member(64);
  EXPECT_THROW(eval_charfn(m, FunctionKind::S, cplx(0.2, 0.0)), DomainError);
}
