#include "filldist/complex.hpp"

#include <algorithm>

#include "filldist/errors.hpp"

namespace filldist {

Complex2::Complex2(int n, std::vector<Triangle> faces) : n_(n) {
  if (n < 3) throw InvalidParameter("Complex2 requires n >= 3");
  faces_.reserve(faces.size());
  for (const Triangle& t : faces) {
    faces_.push_back(make_triangle(n, t.a, t.b, t.c));
  }
  if (!std::is_sorted(faces_.begin(), faces_.end())) {
    std::sort(faces_.begin(), faces_.end());
  }
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  membership_.assign(static_cast<std::size_t>(binomial(n, 3)), false);
  for (const Triangle& t : faces_) {
    membership_[static_cast<std::size_t>(triangle_rank(n_, t))] = true;
  }
}

Complex2 new_complete(int n) {
  if (n < 3) throw InvalidParameter("new_complete requires n >= 3");
  std::vector<Triangle> faces;
  faces.reserve(static_cast<std::size_t>(binomial(n, 3)));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        faces.push_back(Triangle{a, b, c});
      }
    }
  }
  return Complex2(n, std::move(faces));
}

Complex2 new_faceless(int n) { return Complex2(n, {}); }

Complex2 sample_lm(int n, double p, SeededRng& rng) {
  if (n < 3) throw InvalidParameter("sample_lm requires n >= 3");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidParameter("sample_lm requires p in [0, 1]");
  }
  std::vector<Triangle> faces;
  // One draw per triple, lexicographic order; do not reorder or skip.
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        double u = rng.uniform01();
        if (u < p) faces.push_back(Triangle{a, b, c});
      }
    }
  }
  return Complex2(n, std::move(faces));
}

index_t edge_degree(const Complex2& X, Edge e) {
  // Faces containing edge (u,v) are exactly the triples {u,v,w}.
  int n = X.n();
  index_t degree = 0;
  for (int w = 0; w < n; ++w) {
    if (w == e.u || w == e.v) continue;
    if (X.contains(make_triangle(n, e.u, e.v, w))) ++degree;
  }
  return degree;
}

index_t min_edge_degree(const Complex2& X) {
  int n = X.n();
  std::vector<index_t> degree(static_cast<std::size_t>(binomial(n, 2)), 0);
  for (const Triangle& t : X.faces()) {
    for (const Edge& e : t.edges()) {
      ++degree[static_cast<std::size_t>(edge_rank(n, e))];
    }
  }
  return *std::min_element(degree.begin(), degree.end());
}

}  // namespace filldist
