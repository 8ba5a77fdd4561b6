#pragma once

#include <Eigen/Dense>

#include "filldist/chains.hpp"
#include "filldist/complex.hpp"
#include "filldist/rng.hpp"

namespace filldist {

/// Affine map of vertices into R^dim; row v holds the image of vertex v.
/// The induced map on the complex is determined by these images.
struct Embedding {
  int n = 0;
  int dim = 0;
  Eigen::MatrixXd coords;  // n × dim
};

/// Vertex i ↦ i-th standard unit vector of R^n.
Embedding standard_basis_embedding(int n);

/// I.i.d. standard normal coordinates; deterministic per rng seed.
Embedding random_gaussian_embedding(int n, int m, SeededRng& rng);

/// ½·√(Gram determinant) of the image triangle.
double triangle_area(const Embedding& emb, Triangle t);

/// Scaling s with s² = max_τ Fill_X(τ) / Area(φτ) over all C(n,3)
/// triangles, so the rescaled embedding satisfies Area ≥ Fill everywhere
/// with equality at the maximizer.  Throws HomologyObstruction if some
/// triangle has no filling, DegenerateEmbedding on a zero-area triangle.
double scale_factor(const Complex2& X, const Embedding& emb);
double scale_factor(const Embedding& emb, const FillSummary& fills);

/// Real edge cochain with one channel per coordinate pair (i<j); row per
/// edge in EdgeIndex order, column per channel in EdgeIndex order over
/// pairs of coordinate axes.  Shape C(n,2) × C(n,2).
struct VectorCochain1 {
  Eigen::MatrixXd values;
};

/// Vertex coordinates re-expressed in an orthonormal basis of the span
/// of the vertex position vectors, padded with zero columns to n.
/// Rigid-motion data (lengths, areas) is unchanged.
Eigen::MatrixXd span_coordinates(const Embedding& emb);

/// The area 1-form cochain: for edge (v,w) with span coordinates V, W,
/// channel (i<j) holds ½(V_i W_j − V_j W_i), the signed area swept by
/// the segment against the origin in the (i,j) plane.
VectorCochain1 xi_cochain(const Eigen::MatrixXd& span_coords);

/// ξ minus its channel-wise orthogonal projection onto im(d⁰): the
/// divergence-free representative of ξ's class, minimizing ‖ξ + dα‖.
VectorCochain1 psi_cochain(const Complex2& X, const Embedding& emb);

/// Coboundary per face: row f holds ψ(bc) − ψ(ac) + ψ(ab) per channel.
/// Shape |faces| × C(n,2).  For ψ built from ξ this is the per-channel
/// shoelace signed area of the face.
Eigen::MatrixXd coboundary_channels(const Complex2& X,
                                    const VectorCochain1& psi);

/// The scaled area/fill inequality with its internal proof quantities.
struct InequalityReport {
  double lhs = 0.0;          // Σ_f Area(φf)² after scaling
  double rhs = 0.0;          // λ¹/(3(n−2)) · Σ_τ Fill_X(τ)²
  double scale = 0.0;        // applied scaling factor s
  double psi_norm_sq = 0.0;
  double dpsi_norm_sq = 0.0;
  bool holds = false;        // lhs ≥ rhs·(1 − 1e−9)
};

InequalityReport main_inequality_report(const Complex2& X,
                                        const Embedding& emb);
InequalityReport main_inequality_report(const Complex2& X,
                                        const Embedding& emb,
                                        const FillSummary& fills,
                                        double lambda1);

/// Embedding-free lower bound on the triangle-restricted distortion of
/// every affine embedding of X.
struct Certificate {
  double value = 0.0;     // √(λ¹ · ΣFill² / (3(n−2)·|faces|))
  double lambda1 = 0.0;
  index_t face_count = 0;
  double fill_sum_sq = 0.0;
};

Certificate distortion_certificate(const Complex2& X);

/// Certificate value from precomputed ingredients.
double certificate_value(int n, double lambda1, index_t face_count,
                         double fill_sum_sq);

/// Triangle-restricted filling distortion of one embedding:
/// max_τ(Area/Fill) · max_τ(Fill/Area).  Scale-invariant, ≥ 1; a lower
/// bound for the unrestricted distortion.
double triangle_distortion(const Complex2& X, const Embedding& emb);
double triangle_distortion(const Embedding& emb, const FillSummary& fills);

}  // namespace filldist
