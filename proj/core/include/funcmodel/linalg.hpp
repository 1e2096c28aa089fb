#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace funcmodel {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad dimensions, invariants violated).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A spectral parameter hit the spectrum (or a numerically singular system).
class SpectralPointError : public Error {
 public:
  using Error::Error;
};

/// A requested quantity is outside the domain where it is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Largest singular value.
double operator_norm(const CMatrix& m);

/// 2-norm condition number; +inf for singular or empty input.
double condition_number(const CMatrix& m);

/// Solves m x = rhs, refusing when cond(m) exceeds `max_cond`.
/// `what` is used in the SpectralPointError message.
CMatrix guarded_solve(const CMatrix& m, const CMatrix& rhs, double max_cond,
                      const std::string& what);

/// Inverse with the same guard as guarded_solve.
CMatrix guarded_inverse(const CMatrix& m, double max_cond,
                        const std::string& what);

/// ||m - m*|| <= tol * max(1, ||m||) in the max-abs norm.
bool is_hermitian(const CMatrix& m, double tol);

/// Pseudo-inverse of a Hermitian positive-semidefinite matrix. Eigenvalues
/// below `cutoff` are treated as zero; negative roundoff is clipped.
CMatrix hermitian_pinv(const CMatrix& m, double cutoff);

/// Smallest eigenvalue of the Hermitian part of m.
double min_hermitian_eigenvalue(const CMatrix& m);

/// Orthogonal projection onto the positive (sign = +1) or negative (-1)
/// eigenspace of a Hermitian involution, built by functional calculus.
CMatrix spectral_projection(const CMatrix& involution, int sign);

}  // namespace funcmodel
