#pragma once

#include <random>
#include <string>

#include "funcmodel/operators.hpp"
#include "funcmodel/problem.hpp"

namespace fmtest {

using namespace funcmodel;

inline CVector random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (auto& c : v) c = cplx(g(rng), g(rng));
  return v;
}

inline CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(rows, cols);
  for (auto& c : m.reshaped()) c = cplx(g(rng), g(rng));
  return m;
}

inline CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const CMatrix a = random_matrix(n, n, rng);
  return (0.5 * (a + a.adjoint())).eval();
}

inline CMatrix diag_j(std::initializer_list<double> signs) {
  CMatrix j = CMatrix::Zero(signs.size(), signs.size());
  Eigen::Index i = 0;
  for (double s : signs) j(i, i) = s, ++i;
  return j;
}

/// Random Hermitian A with alpha = P m P*, m = scale * I.
inline FamilyMember matrix_member(Eigen::Index n, Eigen::Index r, std::uint64_t seed,
                                  KappaParameter::Preset preset,
                                  std::optional<CMatrix> j = std::nullopt,
                                  double scale = 0.5) {
  std::mt19937_64 rng(seed);
  FamilySpec spec;
  spec.backend = MatrixBackendSpec{random_hermitian(n, rng)};
  spec.alpha = FactoredAlphaSpec{random_matrix(n, r, rng) / std::sqrt(double(n)),
                                 scale * CMatrix::Identity(r, r)};
  spec.kappa.preset = preset;
  spec.kappa.j = j;
  return build_family(spec);
}

/// A = [[a]], V = [[v]], so alpha = sqrt(2|v|) and J = sign v.
inline FamilyMember scalar_member(double a, double v, KappaParameter::Preset preset) {
  FamilySpec spec;
  spec.backend = MatrixBackendSpec{CMatrix::Constant(1, 1, a)};
  spec.alpha = PotentialAlphaSpec{CMatrix::Constant(1, 1, v)};
  spec.kappa.preset = preset;
  return build_family(spec);
}

/// Rank-2 Friedrichs model on [-1, 1] with smooth bump profiles.
inline std::string friedrichs_json(int nodes, int grid_n, const std::string& preset = "iJ") {
  return R"({"name": "friedrichs-test", "seed": 4,
    "backend": {"type": "friedrichs", "lo": -1, "hi": 1, "nodes": )" +
         std::to_string(nodes) + R"(},
    "alpha": {"profiles": [{"bump": 2, "poly": [1, 0.3]}, {"bump": 2, "poly": [0, 1.5, -1]}],
              "m": [[0.7, 0], [0, 0.5]]},
    "kappa": {"preset": ")" + preset + R"(", "J": [[1, 0], [0, -1]]},
    "grid": {"N": )" + std::to_string(grid_n) + R"(, "scale": 1.0},
    "boundary": {"method": "plemelj"}})";
}

inline FamilyMember friedrichs_member(int nodes, const std::string& preset = "iJ") {
  return build_family(parse_problem(friedrichs_json(nodes, 256, preset)).family);
}

/// Smooth function on [-1, 1] vanishing at the ends, in flat coordinates.
inline CVector smooth_friedrichs_vector(const FamilyMember& m, std::mt19937_64& rng) {
  const auto& x = m.backend().rule().nodes;
  const CVector c = random_vector(4, rng);
  CVector u(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double t = x(j);
    u(j) = (1.0 - t * t) * (c(0) + t * (c(1) + t * (c(2) + t * c(3))));
  }
  return m.backend().to_flat(u);
}

}  // namespace fmtest
