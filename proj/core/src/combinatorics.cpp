#include "filldist/combinatorics.hpp"

#include <limits>

#include "filldist/errors.hpp"

namespace filldist {

index_t binomial(index_t n, index_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  index_t result = 1;
  for (index_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is always integral at this point, but the
    // intermediate product may not fit.
    if (result > std::numeric_limits<index_t>::max() / (n - k + i)) {
      throw ContractViolation("binomial: intermediate overflow");
    }
    result = result * (n - k + i) / i;
  }
  return result;
}

namespace {

void check_vertex(int n, int v) {
  if (v < 0 || v >= n) {
    throw InvalidParameter("vertex " + std::to_string(v) +
                           " outside [0, " + std::to_string(n) + ")");
  }
}

}  // namespace

Edge make_edge(int n, int u, int v) {
  check_vertex(n, u);
  check_vertex(n, v);
  if (u == v) throw InvalidParameter("edge with repeated vertex");
  if (u > v) std::swap(u, v);
  return Edge{u, v};
}

Triangle make_triangle(int n, int a, int b, int c) {
  check_vertex(n, a);
  check_vertex(n, b);
  check_vertex(n, c);
  if (a == b || a == c || b == c) {
    throw InvalidParameter("triangle with repeated vertex");
  }
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return Triangle{a, b, c};
}

index_t edge_rank(int n, Edge e) {
  // Pairs starting with u' < u come first: sum_{u'<u} (n-1-u') of them,
  // then (u, u+1), ..., (u, v).
  return binomial(n, 2) - binomial(n - e.u, 2) + (e.v - e.u - 1);
}

Edge edge_unrank(int n, index_t r) {
  if (r < 0 || r >= binomial(n, 2)) {
    throw InvalidParameter("edge rank out of range");
  }
  int u = 0;
  while (binomial(n, 2) - binomial(n - u - 1, 2) <= r) ++u;
  index_t base = binomial(n, 2) - binomial(n - u, 2);
  int v = u + 1 + static_cast<int>(r - base);
  return Edge{u, v};
}

index_t triangle_rank(int n, Triangle t) {
  return binomial(n, 3) - binomial(n - t.a, 3) +
         binomial(n - t.a - 1, 2) - binomial(n - t.b, 2) +
         (t.c - t.b - 1);
}

Triangle triangle_unrank(int n, index_t r) {
  if (r < 0 || r >= binomial(n, 3)) {
    throw InvalidParameter("triangle rank out of range");
  }
  int a = 0;
  while (binomial(n, 3) - binomial(n - a - 1, 3) <= r) ++a;
  index_t rest = r - (binomial(n, 3) - binomial(n - a, 3));
  int b = a + 1;
  while (binomial(n - a - 1, 2) - binomial(n - b - 1, 2) <= rest) ++b;
  index_t base = binomial(n - a - 1, 2) - binomial(n - b, 2);
  int c = b + 1 + static_cast<int>(rest - base);
  return Triangle{a, b, c};
}

}  // namespace filldist
