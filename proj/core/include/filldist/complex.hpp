#pragma once

#include <vector>

#include "filldist/combinatorics.hpp"
#include "filldist/rng.hpp"

namespace filldist {

/// A 2-dimensional simplicial complex on vertex set {0, ..., n-1} with
/// complete 1-skeleton.  Immutable after construction; safe to share
/// across threads.
class Complex2 {
 public:
  /// Builds from an explicit face list.  Faces may arrive in any order;
  /// they are normalized, sorted lexicographically and deduplicated.
  /// Throws InvalidParameter for n < 3 or out-of-range vertices.
  Complex2(int n, std::vector<Triangle> faces);

  int n() const { return n_; }
  const std::vector<Triangle>& faces() const { return faces_; }
  index_t face_count() const { return static_cast<index_t>(faces_.size()); }

  index_t edge_count() const { return binomial(n_, 2); }
  index_t triangle_count() const { return binomial(n_, 3); }

  /// O(1) membership by TriangleIndex rank.
  bool contains(Triangle t) const {
    return membership_[static_cast<std::size_t>(triangle_rank(n_, t))];
  }
  bool contains_rank(index_t rank) const {
    return membership_[static_cast<std::size_t>(rank)];
  }

 private:
  int n_;
  std::vector<Triangle> faces_;
  std::vector<bool> membership_;
};

/// Complete complex on n vertices: all C(n,3) faces present.
Complex2 new_complete(int n);

/// Complex with no 2-faces at all.
Complex2 new_faceless(int n);

/// Linial-Meshulam sample: each triple included independently with
/// probability p.  Consumes exactly one uniform draw per triple, in
/// lexicographic order, so the result is a pure function of the rng
/// seed.  Throws InvalidParameter for n < 3 or p outside [0, 1].
Complex2 sample_lm(int n, double p, SeededRng& rng);

/// Number of faces of X containing the given edge.
index_t edge_degree(const Complex2& X, Edge e);

/// Minimum of edge_degree over all C(n,2) edges of the skeleton.
index_t min_edge_degree(const Complex2& X);

}  // namespace filldist
