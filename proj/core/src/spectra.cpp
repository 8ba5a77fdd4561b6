#include "filldist/spectra.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include "filldist/errors.hpp"

namespace filldist {

Eigen::MatrixXi signed_coboundary(const Complex2& X, int k) {
  int n = X.n();
  index_t edges = binomial(n, 2);
  if (k == 0) {
    Eigen::MatrixXi d0 = Eigen::MatrixXi::Zero(edges, n);
    for (index_t r = 0; r < edges; ++r) {
      Edge e = edge_unrank(n, r);
      d0(r, e.u) = -1;
      d0(r, e.v) = 1;
    }
    return d0;
  }
  if (k == 1) {
    Eigen::MatrixXi d1 = Eigen::MatrixXi::Zero(X.face_count(), edges);
    index_t row = 0;
    for (const Triangle& t : X.faces()) {
      d1(row, edge_rank(n, Edge{t.b, t.c})) = 1;
      d1(row, edge_rank(n, Edge{t.a, t.c})) = -1;
      d1(row, edge_rank(n, Edge{t.a, t.b})) = 1;
      ++row;
    }
    return d1;
  }
  throw InvalidParameter("signed_coboundary: k must be 0 or 1");
}

namespace {

// Up-down form (d¹)ᵀd¹ assembled face by face; avoids materializing d¹
// when the face count is large.
Eigen::MatrixXd updown_form(const Complex2& X) {
  int n = X.n();
  index_t edges = binomial(n, 2);
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(edges, edges);
  for (const Triangle& t : X.faces()) {
    index_t e[3] = {edge_rank(n, Edge{t.b, t.c}), edge_rank(n, Edge{t.a, t.c}),
                    edge_rank(n, Edge{t.a, t.b})};
    double s[3] = {1.0, -1.0, 1.0};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        L(e[i], e[j]) += s[i] * s[j];
      }
    }
  }
  return L;
}

// Orthonormal basis of the orthogonal complement of im(B).  B must have
// full column rank r except possibly one dependent trailing direction;
// the complement is the trailing block of the full Householder Q.
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& B,
                                      index_t image_dim) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
  Eigen::MatrixXd Q = qr.householderQ();
  return Q.rightCols(B.rows() - image_dim);
}

double smallest_eigenvalue(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("eigensolver failed to converge");
  }
  double value = solver.eigenvalues()(0);
  if (std::abs(value) < kEigenvalueClampTol) value = 0.0;
  return value;
}

// Divergence-free subspace basis: complement of the gradient image
// im(d⁰), which has dimension n−1 (one grounded vertex).
Eigen::MatrixXd divergence_free_basis(const Complex2& X) {
  Eigen::MatrixXd d0 = signed_coboundary(X, 0).cast<double>();
  return orthogonal_complement(d0, X.n() - 1);
}

}  // namespace

double lambda_k(const Complex2& X, int k) {
  int n = X.n();
  if (k == 0) {
    // Mean-zero subspace: complement of the constants.
    if (n < 2) throw InvalidParameter("lambda_k: empty subspace");
    Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
    Eigen::MatrixXd Q = orthogonal_complement(ones, 1);
    Eigen::MatrixXd d0 = signed_coboundary(X, 0).cast<double>();
    Eigen::MatrixXd L = d0.transpose() * d0;
    return smallest_eigenvalue(Q.transpose() * L * Q);
  }
  if (k == 1) {
    index_t edges = binomial(n, 2);
    if (edges <= n - 1) throw InvalidParameter("lambda_k: empty subspace");
    Eigen::MatrixXd Q = divergence_free_basis(X);
    Eigen::MatrixXd L = updown_form(X);
    return smallest_eigenvalue(Q.transpose() * L * Q);
  }
  throw InvalidParameter("lambda_k: k must be 0 or 1");
}

index_t betti1_real(const Complex2& X) {
  int n = X.n();
  index_t edges = binomial(n, 2);
  if (X.face_count() == 0) return edges - (n - 1);
  Eigen::MatrixXd d1 = signed_coboundary(X, 1).cast<double>();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(d1);
  const auto& sv = svd.singularValues();
  double threshold = kRankRelTol * sv(0);
  index_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return edges - (n - 1) - rank;
}

double normalized_lambda1(const Complex2& X) {
  int n = X.n();
  index_t edges = binomial(n, 2);
  Eigen::VectorXd degree(edges);
  for (index_t r = 0; r < edges; ++r) {
    index_t deg = edge_degree(X, edge_unrank(n, r));
    if (deg == 0) {
      throw DegenerateDegree("normalized_lambda1: edge with degree 0");
    }
    degree(r) = static_cast<double>(deg);
  }
  Eigen::VectorXd inv_sqrt = degree.array().rsqrt();
  Eigen::MatrixXd L = updown_form(X);
  Eigen::MatrixXd scaled =
      inv_sqrt.asDiagonal() * L * inv_sqrt.asDiagonal();
  Eigen::MatrixXd Q = divergence_free_basis(X);
  return smallest_eigenvalue(Q.transpose() * scaled * Q);
}

SpectralReport spectral_report(const Complex2& X) {
  SpectralReport report;
  report.lambda1 = lambda_k(X, 1);
  report.lambda0 = lambda_k(X, 0);
  report.betti1 = betti1_real(X);
  report.subspace_dim = binomial(X.n(), 2) - (X.n() - 1);
  try {
    report.normalized_lambda1 = normalized_lambda1(X);
  } catch (const DegenerateDegree&) {
    report.normalized_lambda1 = std::nullopt;
  }
  return report;
}

}  // namespace filldist
