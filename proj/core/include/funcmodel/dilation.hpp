#pragma once

#include <string>
#include <vector>

#include "funcmodel/operators.hpp"

namespace funcmodel {

enum class HalfLine { Negative, Positive };

/// sum_d coeffs[d] x^d e^{beta x}, coefficients in E-coordinates.
struct ExpPolyTerm {
  cplx beta;
  std::vector<CVector> coeffs;
};

/// E-valued function on a half-line given as a finite sum of exponential
/// polynomials. Terms must decay: Re beta < 0 on the positive half-line,
/// Re beta > 0 on the negative one.
class ChannelFunction {
 public:
  ChannelFunction() = default;
  ChannelFunction(HalfLine side, Eigen::Index r);

  static ChannelFunction exponential(HalfLine side, cplx beta, const CVector& xi);

  HalfLine side() const { return side_; }
  Eigen::Index dim() const { return r_; }
  const std::vector<ExpPolyTerm>& terms() const { return terms_; }

  /// Adds a term, merging with an existing one of the same exponent.
  void add_term(ExpPolyTerm term);

  CVector value(double x) const;
  CVector at_zero() const;
  ChannelFunction derivative() const;

  ChannelFunction operator+(const ChannelFunction& o) const;
  ChannelFunction operator-(const ChannelFunction& o) const;
  ChannelFunction operator*(cplx s) const;

  /// int conj(this) . other over the half-line, in closed form.
  cplx inner(const ChannelFunction& other) const;
  double norm() const;

  /// (1/sqrt(2 pi)) int e^{ikx} v(x) dx over the half-line; z may be complex
  /// as long as the integral converges.
  CVector fourier(cplx k) const;

  /// Throws InputError when a term does not decay or has the wrong size.
  void validate() const;

 private:
  HalfLine side_ = HalfLine::Positive;
  Eigen::Index r_ = 0;
  std::vector<ExpPolyTerm> terms_;
};

/// (v_minus, u, v_plus) in D_- + K + D_+.
struct DilationVector {
  ChannelFunction v_minus;
  CVector u;
  ChannelFunction v_plus;

  DilationVector operator+(const DilationVector& o) const;
  DilationVector operator-(const DilationVector& o) const;
  DilationVector operator*(cplx s) const;
  cplx inner(const DilationVector& o) const;
  double norm() const;
};

struct DomainCertificate {
  /// || v_plus(0) - v_minus(0) - i alpha u ||
  double boundary_gap = 0.0;
  /// Exponential polynomials are smooth; false only for malformed channels.
  bool differentiable = true;
  std::string summary;
};

DomainCertificate domain_certificate(const FamilyMember& member,
                                     const DilationVector& h);

/// Adds gap * e^{-x} to v_plus so that h satisfies the boundary condition.
DilationVector close_boundary(const FamilyMember& member, DilationVector h);

/// (i v_-', Au + alpha [v_+(0) + v_-(0)] / 2, i v_+'). The member must have
/// kappa = iI; throws DomainError("not in dom(L)") if the gap exceeds 1e-8.
DilationVector dilation_apply(const FamilyMember& member, const DilationVector& h);

/// Solves (L - z) g = f for the dilation L with z non-real.
DilationVector dilation_resolvent(const FamilyMember& member, cplx z,
                                  const DilationVector& f);

/// || P_K (L - z)^{-1} (0,u,0) - (L^{||} - z)^{-1} u || / ||u||, z in C-.
double dilation_compress_check(const FamilyMember& member, cplx z,
                               const CVector& u);

/// Same with z in C+ against (L^{-||} - z)^{-1}.
double dilation_adjoint_compress_check(const FamilyMember& member, cplx z,
                                       const CVector& u);

}  // namespace funcmodel
