#pragma once

#include <memory>
#include <vector>

#include "funcmodel/dilation.hpp"
#include "funcmodel/hardy.hpp"
#include "funcmodel/operators.hpp"

namespace funcmodel {

/// Grid and cached boundary values S(k + i0) for the symmetric model space
/// with weight W(k) = [[I, S*], [S, I]].
class ModelSpace {
 public:
  /// `member` is the dissipative member (kappa = iI) or any member with the
  /// same A and alpha; only A and alpha are used.
  ModelSpace(const FamilyMember& member, AxisGrid grid);

  const FamilyMember& dissipative() const { return member_; }
  const AxisGrid& grid() const { return projector_.grid(); }
  const HardyProjector& projector() const { return projector_; }
  Eigen::Index rank() const { return member_.rank(); }
  int size() const { return grid().n; }

  /// S(k_j + i0).
  const CMatrix& s_at(int j) const { return s_[j]; }
  /// Moore-Penrose inverse of W(k_j) with cutoff 1e-9.
  const CMatrix& w_pinv(int j) const { return w_pinv_[j]; }
  /// Smallest eigenvalue of W over the grid.
  double min_weight_eigenvalue() const { return min_weight_eig_; }

  /// Multiplies each row by S(k_j) (or S(k_j)* when adjoint is set).
  GridFunction apply_s(const GridFunction& f, bool adjoint = false) const;

 private:
  FamilyMember member_;
  HardyProjector projector_;
  std::vector<CMatrix> s_;
  std::vector<CMatrix> w_pinv_;
  double min_weight_eig_ = 0.0;
};

/// A representative (g~, g) of an element of the model space.
struct ModelVector {
  std::shared_ptr<const ModelSpace> space;
  GridFunction g_tilde;
  GridFunction g;

  /// g~ + S* g
  GridFunction g_minus() const;
  /// S g~ + g
  GridFunction g_plus() const;

  ModelVector operator+(const ModelVector& o) const;
  ModelVector operator-(const ModelVector& o) const;
  ModelVector operator*(cplx s) const;
  /// Pointwise multiplication by 1/(k - z).
  ModelVector divided_by(cplx z) const;
};

ModelVector zero_model_vector(std::shared_ptr<const ModelSpace> space);

/// sum_j w_j <W(k_j) x_j, y_j>, conjugate-linear in x.
cplx model_inner(const ModelVector& x, const ModelVector& y);
double model_norm(const ModelVector& x);

/// (g~ - P+(g~ + S* g), g - P-(S g~ + g)).
ModelVector project_to_K(const ModelVector& x);

/// F+ u = -(1/sqrt(2 pi)) alpha (L^{||} - k + i0)^{-1} u (sign > 0) and
/// F- u = -(1/sqrt(2 pi)) alpha (L^{-||} - k - i0)^{-1} u (sign < 0) on the grid.
GridFunction spectral_map_u(const ModelSpace& space, int sign, const CVector& u);

/// F+ h = F+ u + S* v^- + v^+ and F- h = F- u + v^- + S v^+, where v^ is
/// the Fourier transform with kernel e^{ikx} / sqrt(2 pi).
GridFunction spectral_map_F(const ModelSpace& space, int sign, const DilationVector& h);

/// Representative pinv(W) (f_plus, f_minus) of the class with
/// g~ + S* g = f_plus and S g~ + g = f_minus.
ModelVector model_from_pair(std::shared_ptr<const ModelSpace> space,
                            const GridFunction& f_plus, const GridFunction& f_minus);

ModelVector map_Phi(std::shared_ptr<const ModelSpace> space, const DilationVector& h);

}  // namespace funcmodel
