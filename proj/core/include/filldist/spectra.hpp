#pragma once

#include <Eigen/Dense>
#include <optional>

#include "filldist/complex.hpp"

namespace filldist {

/// Eigenvalues within this absolute distance of zero are clamped to 0.
inline constexpr double kEigenvalueClampTol = 1e-10;

/// Singular values below this fraction of the largest one are treated
/// as zero when computing ranks.
inline constexpr double kRankRelTol = 1e-9;

/// Signed coboundary matrix with entries in {-1, 0, +1}, assembled in
/// integer arithmetic.  k=0: C(n,2) × n with (dα)(a,b) = α(b) − α(a).
/// k=1: |faces| × C(n,2) with (dβ)(a,b,c) = β(b,c) − β(a,c) + β(a,b).
Eigen::MatrixXi signed_coboundary(const Complex2& X, int k);

/// Up-down spectral gap λ^k: the smallest eigenvalue of (d^k)ᵀd^k
/// restricted to the orthogonal complement of im(d^{k−1}) (divergence-
/// free edge cochains for k=1, mean-zero vertex functions for k=0).
double lambda_k(const Complex2& X, int k);

/// First real Betti number: C(n,2) − (n−1) − rank(d¹), rank by SVD.
index_t betti1_real(const Complex2& X);

/// Degree-normalized gap: smallest eigenvalue of the symmetric
/// conjugation W^{−1/2} (d¹)ᵀd¹ W^{−1/2} on the divergence-free
/// subspace, W the diagonal of edge degrees.  On edge-regular complexes
/// this equals λ¹ divided by the common degree.  Throws DegenerateDegree
/// when some edge lies in no face.
double normalized_lambda1(const Complex2& X);

struct SpectralReport {
  double lambda1 = 0.0;
  double lambda0 = 0.0;
  index_t betti1 = 0;
  index_t subspace_dim = 0;  // C(n,2) − (n−1)
  std::optional<double> normalized_lambda1;  // absent when a degree is 0
};

SpectralReport spectral_report(const Complex2& X);

}  // namespace filldist
