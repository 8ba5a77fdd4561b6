#include "filldist/embed.hpp"

#include <Eigen/QR>
#include <cmath>

#include "filldist/errors.hpp"
#include "filldist/spectra.hpp"

namespace filldist {

namespace {

void check_compatible(const Complex2& X, const Embedding& emb) {
  if (emb.n != X.n()) {
    throw InvalidParameter("embedding vertex count does not match complex");
  }
  if (emb.coords.rows() != emb.n || emb.coords.cols() != emb.dim) {
    throw InvalidParameter("embedding coordinate matrix has wrong shape");
  }
}

}  // namespace

Embedding standard_basis_embedding(int n) {
  if (n < 3) throw InvalidParameter("standard_basis_embedding: n >= 3");
  return Embedding{n, n, Eigen::MatrixXd::Identity(n, n)};
}

Embedding random_gaussian_embedding(int n, int m, SeededRng& rng) {
  if (n < 1) throw InvalidParameter("random_gaussian_embedding: n >= 1");
  if (m < 2) throw InvalidParameter("random_gaussian_embedding: m >= 2");
  Eigen::MatrixXd coords(n, m);
  for (int v = 0; v < n; ++v) {
    for (int d = 0; d < m; ++d) coords(v, d) = rng.normal();
  }
  return Embedding{n, m, std::move(coords)};
}

double triangle_area(const Embedding& emb, Triangle t) {
  t = make_triangle(emb.n, t.a, t.b, t.c);
  Eigen::RowVectorXd u = emb.coords.row(t.b) - emb.coords.row(t.a);
  Eigen::RowVectorXd v = emb.coords.row(t.c) - emb.coords.row(t.a);
  double g11 = u.squaredNorm();
  double g22 = v.squaredNorm();
  double g12 = u.dot(v);
  double det = g11 * g22 - g12 * g12;
  return det > 0.0 ? 0.5 * std::sqrt(det) : 0.0;
}

double scale_factor(const Embedding& emb, const FillSummary& fills) {
  if (fills.infeasible > 0) {
    throw HomologyObstruction("scale_factor: some triangle has no filling");
  }
  int n = emb.n;
  index_t total = binomial(n, 3);
  if (static_cast<index_t>(fills.sizes.size()) != total) {
    throw ContractViolation("scale_factor: fill summary size mismatch");
  }
  double s_sq = 0.0;
  for (index_t r = 0; r < total; ++r) {
    double area = triangle_area(emb, triangle_unrank(n, r));
    if (area <= 0.0) {
      throw DegenerateEmbedding("scale_factor: zero-area triangle image");
    }
    double ratio =
        static_cast<double>(*fills.sizes[static_cast<std::size_t>(r)]) / area;
    if (ratio > s_sq) s_sq = ratio;
  }
  return std::sqrt(s_sq);
}

double scale_factor(const Complex2& X, const Embedding& emb) {
  check_compatible(X, emb);
  return scale_factor(emb, all_triangle_fills(X));
}

Eigen::MatrixXd span_coordinates(const Embedding& emb) {
  if (emb.coords.rows() != emb.n || emb.coords.cols() != emb.dim) {
    throw InvalidParameter("span_coordinates: coordinate shape mismatch");
  }
  int n = emb.n;
  int m = emb.dim;
  // QR of the transposed coordinates: positions re-expressed against the
  // orthonormal Q basis are the columns of R, and rows of R beyond
  // min(m, n) vanish by triangularity.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(emb.coords.transpose());
  Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  int k = std::min(m, n);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  out.leftCols(k) = R.topRows(k).transpose();
  return out;
}

VectorCochain1 xi_cochain(const Eigen::MatrixXd& span_coords) {
  int n = static_cast<int>(span_coords.rows());
  if (span_coords.cols() != n) {
    throw InvalidParameter("xi_cochain: expected square span coordinates");
  }
  index_t edges = binomial(n, 2);
  Eigen::MatrixXd values(edges, edges);
  for (index_t er = 0; er < edges; ++er) {
    Edge e = edge_unrank(n, er);
    for (index_t ch = 0; ch < edges; ++ch) {
      Edge axes = edge_unrank(n, ch);
      values(er, ch) = 0.5 * (span_coords(e.u, axes.u) * span_coords(e.v, axes.v) -
                              span_coords(e.u, axes.v) * span_coords(e.v, axes.u));
    }
  }
  return VectorCochain1{std::move(values)};
}

VectorCochain1 psi_cochain(const Complex2& X, const Embedding& emb) {
  check_compatible(X, emb);
  int n = X.n();
  VectorCochain1 xi = xi_cochain(span_coordinates(emb));

  // Channel-wise projection off im(d⁰); the first n−1 Householder
  // columns span the image exactly (grounded-vertex rank argument).
  Eigen::MatrixXd d0 = signed_coboundary(X, 0).cast<double>();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(d0);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd Q0 = Q.leftCols(n - 1);
  Eigen::MatrixXd values = xi.values - Q0 * (Q0.transpose() * xi.values);
  return VectorCochain1{std::move(values)};
}

Eigen::MatrixXd coboundary_channels(const Complex2& X,
                                    const VectorCochain1& psi) {
  int n = X.n();
  index_t edges = binomial(n, 2);
  if (psi.values.rows() != edges || psi.values.cols() != edges) {
    throw InvalidParameter("coboundary_channels: cochain shape mismatch");
  }
  Eigen::MatrixXd out(X.face_count(), edges);
  index_t row = 0;
  for (const Triangle& t : X.faces()) {
    out.row(row) = psi.values.row(edge_rank(n, Edge{t.b, t.c})) -
                   psi.values.row(edge_rank(n, Edge{t.a, t.c})) +
                   psi.values.row(edge_rank(n, Edge{t.a, t.b}));
    ++row;
  }
  return out;
}

InequalityReport main_inequality_report(const Complex2& X,
                                        const Embedding& emb) {
  return main_inequality_report(X, emb, all_triangle_fills(X),
                                lambda_k(X, 1));
}

InequalityReport main_inequality_report(const Complex2& X,
                                        const Embedding& emb,
                                        const FillSummary& fills,
                                        double lambda1) {
  check_compatible(X, emb);
  int n = X.n();
  if (fills.infeasible > 0) {
    throw HomologyObstruction(
        "main_inequality_report: some triangle has no filling");
  }
  double s = scale_factor(emb, fills);
  Embedding scaled{emb.n, emb.dim, emb.coords * s};

  InequalityReport report;
  report.scale = s;
  for (const Triangle& f : X.faces()) {
    double area = triangle_area(scaled, f);
    report.lhs += area * area;
  }
  double fill_sum_sq = *fills.sum_sq;
  report.rhs = lambda1 / (3.0 * (n - 2)) * fill_sum_sq;

  VectorCochain1 psi = psi_cochain(X, scaled);
  report.psi_norm_sq = psi.values.squaredNorm();
  report.dpsi_norm_sq = coboundary_channels(X, psi).squaredNorm();

  // Internal proof chain: the coboundary energy IS the area sum, and the
  // edge-counting step survives scaling.  A violation is a bug, not data.
  if (std::abs(report.dpsi_norm_sq - report.lhs) > 1e-9 * report.lhs) {
    throw ContractViolation("coboundary energy differs from area sum");
  }
  if ((n - 2) * report.psi_norm_sq <
      fill_sum_sq / 3.0 * (1.0 - 1e-9)) {
    throw ContractViolation("edge-counting step failed after scaling");
  }

  report.holds = report.lhs >= report.rhs * (1.0 - 1e-9);
  return report;
}

Certificate distortion_certificate(const Complex2& X) {
  int n = X.n();
  double lambda1 = lambda_k(X, 1);
  if (lambda1 <= 0.0) {
    throw ZeroSpectralGap("distortion_certificate: lambda1 is zero");
  }
  FillSummary fills = all_triangle_fills(X);
  if (fills.infeasible > 0) {
    throw HomologyObstruction(
        "distortion_certificate: some triangle has no filling");
  }
  Certificate cert;
  cert.lambda1 = lambda1;
  cert.face_count = X.face_count();
  cert.fill_sum_sq = *fills.sum_sq;
  cert.value = certificate_value(n, lambda1, cert.face_count,
                                 cert.fill_sum_sq);
  return cert;
}

double certificate_value(int n, double lambda1, index_t face_count,
                         double fill_sum_sq) {
  return std::sqrt(lambda1 * fill_sum_sq /
                   (3.0 * (n - 2) * static_cast<double>(face_count)));
}

double triangle_distortion(const Embedding& emb, const FillSummary& fills) {
  if (fills.infeasible > 0) {
    throw HomologyObstruction(
        "triangle_distortion: some triangle has no filling");
  }
  int n = emb.n;
  index_t total = binomial(n, 3);
  double max_area_over_fill = 0.0;
  double max_fill_over_area = 0.0;
  for (index_t r = 0; r < total; ++r) {
    double area = triangle_area(emb, triangle_unrank(n, r));
    if (area <= 0.0) {
      throw DegenerateEmbedding(
          "triangle_distortion: zero-area triangle image");
    }
    double fill =
        static_cast<double>(*fills.sizes[static_cast<std::size_t>(r)]);
    max_area_over_fill = std::max(max_area_over_fill, area / fill);
    max_fill_over_area = std::max(max_fill_over_area, fill / area);
  }
  return max_area_over_fill * max_fill_over_area;
}

double triangle_distortion(const Complex2& X, const Embedding& emb) {
  check_compatible(X, emb);
  return triangle_distortion(emb, all_triangle_fills(X));
}

}  // namespace filldist
