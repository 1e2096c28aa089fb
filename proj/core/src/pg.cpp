#include "funcmodel/pg.hpp"

namespace funcmodel {
namespace {

constexpr double kPencilLimit = 1e12;

void check_square(const CMatrix& m, const SignatureProjections& sig) {
  if (m.rows() != sig.j.rows() || m.cols() != sig.j.cols()) {
    throw InputError("PG transform: dimension mismatch");
  }
}

}  // namespace

SignatureProjections SignatureProjections::from_j(const CMatrix& j) {
  if (j.rows() != j.cols() || !is_hermitian(j, 1e-12)) {
    throw InputError("J must be Hermitian");
  }
  const auto r = j.rows();
  if ((j * j - CMatrix::Identity(r, r)).cwiseAbs().maxCoeff() > 1e-12) {
    throw InputError("J must be an involution");
  }
  return {j, spectral_projection(j, +1), spectral_projection(j, -1)};
}

CMatrix pg_forward(const CMatrix& theta, const SignatureProjections& sig) {
  check_square(theta, sig);
  const CMatrix pencil = sig.chi_plus - theta * sig.chi_minus;
  return -guarded_solve(pencil, sig.chi_minus - theta * sig.chi_plus,
                        kPencilLimit, "PG transform undefined at this point");
}

CMatrix pg_inverse(const CMatrix& s, const SignatureProjections& sig) {
  check_square(s, sig);
  const CMatrix pencil = sig.chi_plus + sig.chi_minus * s;
  const CMatrix num = sig.chi_minus + sig.chi_plus * s;
  // X pencil = num  <=>  pencil* X* = num*
  const CMatrix xt = guarded_solve(pencil.adjoint(), num.adjoint(), kPencilLimit,
                                   "PG transform undefined at this point");
  return xt.adjoint();
}

}  // namespace funcmodel
