#include <gtest/gtest.h>

#include "funcmodel/charfn.hpp"
#include "funcmodel/pg.hpp"
#include "test_util.hpp"

using namespace funcmodel;

TEST(PG, ScalarSignatures) {
  const cplx th(0.3, -0.4);
  const CMatrix theta = CMatrix::Constant(1, 1, th);
  const auto plus = SignatureProjections::from_j(CMatrix::Identity(1, 1));
  const auto minus = SignatureProjections::from_j(-CMatrix::Identity(1, 1));
  EXPECT_NEAR(std::abs(pg_forward(theta, plus)(0, 0) - th), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(pg_forward(theta, minus)(0, 0) - 1.0 / th), 0.0, 1e-15);
}

TEST(PG, RejectsNonInvolution) {
  CMatrix j = fmtest::diag_j({1, -1});
  j(0, 1) = 0.1;
  EXPECT_THROW(SignatureProjections::from_j(j), InputError);
}

TEST(PG, UndefinedPencil) {
  const auto sig = SignatureProjections::from_j(fmtest::diag_j({1, -1}));
  CMatrix theta = CMatrix::Zero(2, 2);
  theta(0, 0) = 1.0;
  EXPECT_THROW(pg_forward(theta, sig), SpectralPointError);
}

TEST(PG, RoundTripsOnCharacteristicFunctions) {
  const CMatrix j = fmtest::diag_j({1, -1, 1});
  const FamilyMember m = fmtest::matrix_member(6, 3, 31, KappaParameter::Preset::IJ, j);
  const auto sig = SignatureProjections::from_j(j);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.1, 3.0);
  for (int i = 0; i < 50; ++i) {
    const cplx z(re(rng), im(rng));
    const CMatrix s = eval_charfn(m, FunctionKind::S, z);
    const CMatrix th = eval_charfn(m, FunctionKind::Theta, z);
    EXPECT_LT(operator_norm(pg_forward(pg_inverse(s, sig), sig) - s), 1e-10);
    EXPECT_LT(operator_norm(pg_inverse(pg_forward(th, sig), sig) - th), 1e-10);
    EXPECT_LT(operator_norm(pg_forward(th, sig) - s), 1e-8) << z;
  }
}
