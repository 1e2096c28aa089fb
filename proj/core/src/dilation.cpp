#include "funcmodel/dilation.hpp"

#include <cmath>
#include <numbers>

namespace funcmodel {
namespace {

constexpr double kDomainTol = 1e-8;

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

// int x^n e^{s x} over the half-line.
cplx moment(HalfLine side, std::size_t n, cplx s) {
  const double f = factorial(n);
  if (side == HalfLine::Positive) return f / std::pow(-s, static_cast<int>(n + 1));
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * f / std::pow(s, static_cast<int>(n + 1));
}

bool same_exponent(cplx a, cplx b) {
  return std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a));
}

void require_dissipative(const FamilyMember& member) {
  if (!member.kappa().is_plus_i()) {
    throw InputError("the dilation is built for the dissipative member (kappa = iI)");
  }
}

// Particular solution of i q' - z q = f on the channel, termwise
// (i beta - z) q + i q' = p for q e^{beta x}.
ChannelFunction particular(const ChannelFunction& f, cplx z) {
  ChannelFunction out(f.side(), f.dim());
  for (const auto& term : f.terms()) {
    const std::size_t deg = term.coeffs.size();
    if (deg == 0) continue;
    const cplx a = kI * term.beta - z;
    ExpPolyTerm q{term.beta, {}};
    if (std::abs(a) <= 1e-13 * std::max(1.0, std::abs(z))) {
      q.coeffs.assign(deg + 1, CVector::Zero(f.dim()));
      for (std::size_t d = 0; d < deg; ++d) {
        q.coeffs[d + 1] = -kI * term.coeffs[d] / static_cast<double>(d + 1);
      }
    } else {
      q.coeffs.assign(deg, CVector::Zero(f.dim()));
      q.coeffs[deg - 1] = term.coeffs[deg - 1] / a;
      for (std::size_t d = deg - 1; d-- > 0;) {
        q.coeffs[d] =
            (term.coeffs[d] - kI * static_cast<double>(d + 1) * q.coeffs[d + 1]) / a;
      }
    }
    out.add_term(std::move(q));
  }
  return out;
}

}  // namespace

ChannelFunction::ChannelFunction(HalfLine side, Eigen::Index r) : side_(side), r_(r) {}

ChannelFunction ChannelFunction::exponential(HalfLine side, cplx beta,
                                             const CVector& xi) {
  ChannelFunction f(side, xi.size());
  f.add_term({beta, {xi}});
  return f;
}

void ChannelFunction::add_term(ExpPolyTerm term) {
  for (auto& t : terms_) {
    if (same_exponent(t.beta, term.beta)) {
      if (t.coeffs.size() < term.coeffs.size()) {
        t.coeffs.resize(term.coeffs.size(), CVector::Zero(r_));
      }
      for (std::size_t d = 0; d < term.coeffs.size(); ++d) t.coeffs[d] += term.coeffs[d];
      return;
    }
  }
  terms_.push_back(std::move(term));
}

CVector ChannelFunction::value(double x) const {
  CVector out = CVector::Zero(r_);
  for (const auto& t : terms_) {
    const cplx e = std::exp(t.beta * x);
    double xp = 1.0;
    for (const auto& c : t.coeffs) {
      out += (xp * e) * c;
      xp *= x;
    }
  }
  return out;
}

CVector ChannelFunction::at_zero() const {
  CVector out = CVector::Zero(r_);
  for (const auto& t : terms_) {
    if (!t.coeffs.empty()) out += t.coeffs[0];
  }
  return out;
}

ChannelFunction ChannelFunction::derivative() const {
  ChannelFunction out(side_, r_);
  for (const auto& t : terms_) {
    ExpPolyTerm d{t.beta, {}};
    d.coeffs.resize(t.coeffs.size(), CVector::Zero(r_));
    for (std::size_t k = 0; k < t.coeffs.size(); ++k) {
      d.coeffs[k] += t.beta * t.coeffs[k];
      if (k > 0) d.coeffs[k - 1] += static_cast<double>(k) * t.coeffs[k];
    }
    out.add_term(std::move(d));
  }
  return out;
}

ChannelFunction ChannelFunction::operator+(const ChannelFunction& o) const {
  if (o.r_ != r_ || o.side_ != side_) throw InputError("channel mismatch");
  ChannelFunction out = *this;
  for (const auto& t : o.terms_) out.add_term(t);
  return out;
}

ChannelFunction ChannelFunction::operator-(const ChannelFunction& o) const {
  return *this + o * cplx(-1.0, 0.0);
}

ChannelFunction ChannelFunction::operator*(cplx s) const {
  ChannelFunction out = *this;
  for (auto& t : out.terms_) {
    for (auto& c : t.coeffs) c *= s;
  }
  return out;
}

cplx ChannelFunction::inner(const ChannelFunction& other) const {
  if (other.r_ != r_ || other.side_ != side_) throw InputError("channel mismatch");
  cplx acc = 0.0;
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      const cplx s = std::conj(a.beta) + b.beta;
      for (std::size_t d = 0; d < a.coeffs.size(); ++d) {
        for (std::size_t e = 0; e < b.coeffs.size(); ++e) {
          acc += a.coeffs[d].dot(b.coeffs[e]) * moment(side_, d + e, s);
        }
      }
    }
  }
  return acc;
}

double ChannelFunction::norm() const { return std::sqrt(std::max(0.0, inner(*this).real())); }

CVector ChannelFunction::fourier(cplx k) const {
  CVector out = CVector::Zero(r_);
  for (const auto& t : terms_) {
    const cplx s = t.beta + kI * k;
    for (std::size_t d = 0; d < t.coeffs.size(); ++d) {
      out += moment(side_, d, s) * t.coeffs[d];
    }
  }
  return out / std::sqrt(2.0 * std::numbers::pi);
}

void ChannelFunction::validate() const {
  for (const auto& t : terms_) {
    const double re = t.beta.real();
    if ((side_ == HalfLine::Positive && !(re < 0.0)) ||
        (side_ == HalfLine::Negative && !(re > 0.0))) {
      throw InputError("channel term is not square integrable");
    }
    for (const auto& c : t.coeffs) {
      if (c.size() != r_) throw InputError("channel coefficient has wrong dimension");
    }
  }
}

DilationVector DilationVector::operator+(const DilationVector& o) const {
  return {v_minus + o.v_minus, u + o.u, v_plus + o.v_plus};
}

DilationVector DilationVector::operator-(const DilationVector& o) const {
  return {v_minus - o.v_minus, u - o.u, v_plus - o.v_plus};
}

DilationVector DilationVector::operator*(cplx s) const {
  return {v_minus * s, u * s, v_plus * s};
}

cplx DilationVector::inner(const DilationVector& o) const {
  return v_minus.inner(o.v_minus) + u.dot(o.u) + v_plus.inner(o.v_plus);
}

double DilationVector::norm() const { return std::sqrt(std::max(0.0, inner(*this).real())); }

DomainCertificate domain_certificate(const FamilyMember& member,
                                     const DilationVector& h) {
  DomainCertificate cert;
  const auto r = member.rank();
  if (h.v_minus.dim() != r || h.v_plus.dim() != r || h.u.size() != member.dim()) {
    throw InputError("dilation vector dimensions do not match the member");
  }
  try {
    h.v_minus.validate();
    h.v_plus.validate();
  } catch (const InputError& e) {
    cert.differentiable = false;
    cert.summary = e.what();
  }
  const CVector gap =
      h.v_plus.at_zero() - h.v_minus.at_zero() - kI * member.alpha().to_e(h.u);
  cert.boundary_gap = gap.norm();
  if (cert.summary.empty()) cert.summary = "exponential polynomial channels";
  return cert;
}

DilationVector close_boundary(const FamilyMember& member, DilationVector h) {
  const CVector gap =
      h.v_plus.at_zero() - h.v_minus.at_zero() - kI * member.alpha().to_e(h.u);
  h.v_plus.add_term({cplx(-1.0, 0.0), {-gap}});
  return h;
}

DilationVector dilation_apply(const FamilyMember& member, const DilationVector& h) {
  require_dissipative(member);
  const DomainCertificate cert = domain_certificate(member, h);
  const double scale = std::max(1.0, h.norm());
  if (!cert.differentiable || cert.boundary_gap > kDomainTol * scale) {
    throw DomainError("not in dom(L): boundary gap " + std::to_string(cert.boundary_gap));
  }
  DilationVector out;
  out.v_minus = h.v_minus.derivative() * kI;
  out.v_plus = h.v_plus.derivative() * kI;
  out.u = member.backend().apply(h.u) +
          0.5 * member.alpha().from_e(h.v_plus.at_zero() + h.v_minus.at_zero());
  return out;
}

DilationVector dilation_resolvent(const FamilyMember& member, cplx z,
                                  const DilationVector& f) {
  require_dissipative(member);
  if (z.imag() == 0.0) throw DomainError("dilation resolvent needs non-real z");
  f.v_minus.validate();
  f.v_plus.validate();
  const auto& alpha = member.alpha();
  const ChannelFunction p_minus = particular(f.v_minus, z);
  const ChannelFunction p_plus = particular(f.v_plus, z);
  const CVector pm0 = p_minus.at_zero();
  const CVector pp0 = p_plus.at_zero();

  // Coupled solve for the K-row and the free channel constant xi, with
  // sgn = +1 for z in C- (xi on the outgoing channel) and -1 for z in C+:
  //   xi = sgn (i alpha u + p_-(0) - p_+(0)),
  //   (A - z) u + Q m (p_+(0) + p_-(0) + xi) / 2 = f_u.
  const double sgn = z.imag() < 0.0 ? 1.0 : -1.0;
  const auto& backend = member.backend();
  const CMatrix qm = alpha.q * alpha.m;
  CMatrix r0qm(qm.rows(), qm.cols());
  for (Eigen::Index c = 0; c < qm.cols(); ++c) r0qm.col(c) = backend.resolve(z, qm.col(c));
  const CMatrix mm = qm.adjoint() * r0qm;
  const CVector r0f = backend.resolve(z, f.u);
  const CVector b = qm.adjoint() * r0f;
  const CVector c = pp0 + pm0;
  const auto r = alpha.rank();
  const CMatrix lhs = CMatrix::Identity(r, r) + sgn * 0.5 * kI * mm;
  const CVector rhs = sgn * (kI * b - 0.5 * kI * (mm * c) + pm0 - pp0);
  const CVector xi = guarded_solve(lhs, rhs, kSpectralConditionLimit,
                                   "dilation resolvent: singular boundary system");

  DilationVector g;
  g.v_minus = p_minus;
  g.v_plus = p_plus;
  g.u = r0f - r0qm * (0.5 * (c + xi));
  if (sgn > 0.0) {
    g.v_plus.add_term({-kI * z, {xi}});
  } else {
    g.v_minus.add_term({-kI * z, {xi}});
  }
  return g;
}

namespace {

double compress_residual(const FamilyMember& member, cplx z, const CVector& u,
                         const FamilyMember& reference) {
  const auto r = member.rank();
  DilationVector f{ChannelFunction(HalfLine::Negative, r), u,
                   ChannelFunction(HalfLine::Positive, r)};
  const DilationVector g = dilation_resolvent(member, z, f);
  const CVector direct = apply_resolvent(reference, z, u);
  const double un = u.norm();
  return (g.u - direct).norm() / (un > 0.0 ? un : 1.0);
}

}  // namespace

double dilation_compress_check(const FamilyMember& member, cplx z,
                               const CVector& u) {
  require_dissipative(member);
  if (!(z.imag() < 0.0)) throw DomainError("compression check needs z in C-");
  return compress_residual(member, z, u, member);
}

double dilation_adjoint_compress_check(const FamilyMember& member, cplx z,
                                       const CVector& u) {
  require_dissipative(member);
  if (!(z.imag() > 0.0)) throw DomainError("adjoint compression check needs z in C+");
  return compress_residual(member, z, u, member.anti_dissipative());
}

}  // namespace funcmodel
