#pragma once

#include "funcmodel/linalg.hpp"

namespace funcmodel {

/// chi_plus = (I + J)/2, chi_minus = (I - J)/2, built from the spectral
/// decomposition of J so both are exact orthogonal projections.
struct SignatureProjections {
  CMatrix j;
  CMatrix chi_plus;
  CMatrix chi_minus;

  /// Throws InputError unless J is a Hermitian involution to 1e-12.
  static SignatureProjections from_j(const CMatrix& j);
};

/// S = -(chi+ - Theta chi-)^{-1} (chi- - Theta chi+).
/// Throws SpectralPointError("PG transform undefined at this point") when the
/// pencil has condition number above 1e12.
CMatrix pg_forward(const CMatrix& theta, const SignatureProjections& sig);

/// Theta = (chi- + chi+ S)(chi+ + chi- S)^{-1}.
CMatrix pg_inverse(const CMatrix& s, const SignatureProjections& sig);

}  // namespace funcmodel
