#pragma once

#include <array>
#include <compare>
#include <cstdint>

namespace filldist {

using index_t = std::int64_t;

/// Unordered pair of vertices, stored with u < v.
struct Edge {
  int u;
  int v;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Unordered triple of vertices, stored with a < b < c.
struct Triangle {
  int a;
  int b;
  int c;

  std::array<Edge, 3> edges() const {
    return {Edge{a, b}, Edge{a, c}, Edge{b, c}};
  }

  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

/// Exact C(n, k) for small arguments; throws ContractViolation on
/// signed-64 overflow.
index_t binomial(index_t n, index_t k);

/// Normalizes an unordered pair/triple into sorted form.  Throws
/// InvalidParameter on repeated vertices or vertices outside [0, n).
Edge make_edge(int n, int u, int v);
Triangle make_triangle(int n, int a, int b, int c);

/// Rank of an edge within the lexicographic enumeration of all
/// C(n, 2) sorted pairs on vertex set {0, ..., n-1}:
/// (0,1), (0,2), ..., (0,n-1), (1,2), ...
index_t edge_rank(int n, Edge e);
Edge edge_unrank(int n, index_t r);

/// Rank of a triangle within the lexicographic enumeration of all
/// C(n, 3) sorted triples: (0,1,2), (0,1,3), ..., (n-3,n-2,n-1).
index_t triangle_rank(int n, Triangle t);
Triangle triangle_unrank(int n, index_t r);

}  // namespace filldist
