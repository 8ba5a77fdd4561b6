#include "filldist/chains.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "filldist/errors.hpp"

namespace filldist {

bool is_cycle(int n, const Chain1& y) {
  std::vector<int> parity(static_cast<std::size_t>(n), 0);
  for (index_t r : y.support) {
    Edge e = edge_unrank(n, r);
    parity[static_cast<std::size_t>(e.u)] ^= 1;
    parity[static_cast<std::size_t>(e.v)] ^= 1;
  }
  return std::all_of(parity.begin(), parity.end(),
                     [](int v) { return v == 0; });
}

Cycle1 as_cycle(int n, Chain1 y) {
  std::sort(y.support.begin(), y.support.end());
  if (std::adjacent_find(y.support.begin(), y.support.end()) !=
      y.support.end()) {
    throw ContractViolation("as_cycle: duplicate edge in support");
  }
  if (!is_cycle(n, y)) {
    throw ContractViolation("as_cycle: chain has nonzero boundary");
  }
  return Cycle1{std::move(y)};
}

Cycle1 triangle_boundary(int n, Triangle t) {
  t = make_triangle(n, t.a, t.b, t.c);
  Chain1 c;
  for (const Edge& e : t.edges()) c.support.push_back(edge_rank(n, e));
  std::sort(c.support.begin(), c.support.end());
  return Cycle1{std::move(c)};
}

Gf2Matrix boundary_matrix_gf2(const Complex2& X, int k) {
  int n = X.n();
  if (k == 2) {
    Gf2Matrix m(binomial(n, 2), X.face_count());
    index_t col = 0;
    for (const Triangle& t : X.faces()) {
      for (const Edge& e : t.edges()) m.set(edge_rank(n, e), col);
      ++col;
    }
    return m;
  }
  if (k == 1) {
    index_t edges = binomial(n, 2);
    Gf2Matrix m(n, edges);
    for (index_t c = 0; c < edges; ++c) {
      Edge e = edge_unrank(n, c);
      m.set(e.u, c);
      m.set(e.v, c);
    }
    return m;
  }
  throw InvalidParameter("boundary_matrix_gf2: k must be 1 or 2");
}

namespace {

// Boundary column (over edge ranks) of one triangle of the complete
// complex.
BitVec triangle_column(int n, Triangle t, index_t edge_count) {
  BitVec col(edge_count);
  for (const Edge& e : t.edges()) col.set(edge_rank(n, e));
  return col;
}

// Row-major E × |cols| matrix whose j-th column is the boundary of
// columns[j], drawn from the given per-face boundary vectors.
Gf2Matrix restricted_boundary(const std::vector<BitVec>& face_boundaries,
                              const std::vector<index_t>& columns,
                              index_t edge_count) {
  Gf2Matrix m(edge_count, static_cast<index_t>(columns.size()));
  for (index_t j = 0; j < static_cast<index_t>(columns.size()); ++j) {
    for (index_t e :
         face_boundaries[static_cast<std::size_t>(columns[j])].ones()) {
      m.set(e, j);
    }
  }
  return m;
}

// Exact minimum-weight element of y0 + span(kernel) by Gray-code sweep;
// flips one kernel vector per step.  Returns the minimizing vector.
BitVec coset_minimum(const BitVec& y0, const std::vector<BitVec>& kernel) {
  BitVec cur = y0;
  BitVec best = cur;
  index_t best_size = cur.popcount();
  std::uint64_t total = 1ull << kernel.size();
  for (std::uint64_t i = 1; i < total && best_size > 0; ++i) {
    cur.xor_in(kernel[static_cast<std::size_t>(std::countr_zero(i))]);
    index_t size = cur.popcount();
    if (size < best_size) {
      best_size = size;
      best = cur;
    }
  }
  return best;
}

// Greedy support-minimalization in face-list coordinates: while the
// boundary map restricted to the support has a nontrivial kernel, strip
// the first kernel vector's support.
std::vector<index_t> minimal_support(
    const std::vector<BitVec>& face_boundaries, std::vector<index_t> columns,
    index_t edge_count) {
  for (;;) {
    Gf2Solver solver(
        restricted_boundary(face_boundaries, columns, edge_count));
    if (solver.kernel_basis().empty()) return columns;
    const BitVec& s = solver.kernel_basis().front();
    std::vector<index_t> next;
    next.reserve(columns.size());
    for (index_t j = 0; j < static_cast<index_t>(columns.size()); ++j) {
      if (!s.get(j)) next.push_back(columns[j]);
    }
    columns = std::move(next);
  }
}

}  // namespace

FillSolver::FillSolver(const Complex2& X)
    : X_(&X),
      boundary2_(boundary_matrix_gf2(X, 2)),
      solver_(boundary2_) {
  face_boundaries_.reserve(static_cast<std::size_t>(X.face_count()));
  for (const Triangle& t : X.faces()) {
    face_boundaries_.push_back(triangle_column(X.n(), t, X.edge_count()));
  }
}

BitVec FillSolver::cycle_bits(const Cycle1& z) const {
  BitVec b(X_->edge_count());
  for (index_t r : z.chain.support) {
    if (r < 0 || r >= X_->edge_count()) {
      throw ContractViolation("fill: edge rank out of range");
    }
    b.set(r);
  }
  return b;
}

Chain2 FillSolver::to_chain2(const BitVec& face_bits) const {
  Chain2 out;
  for (index_t j : face_bits.ones()) {
    out.support.push_back(
        triangle_rank(X_->n(), X_->faces()[static_cast<std::size_t>(j)]));
  }
  return out;
}

FillResult FillSolver::fill(const Cycle1& z) const {
  BitVec zb = cycle_bits(z);
  if (zb.is_zero()) {
    return FillResult{FillStatus::Feasible, 0, Chain2{}, true};
  }

  // A 3-edge cycle is a triangle boundary; if that triangle is a face it
  // fills itself, and no smaller filling of a nonzero cycle exists.
  if (z.chain.support.size() == 3) {
    Edge e0 = edge_unrank(X_->n(), z.chain.support[0]);
    Edge e1 = edge_unrank(X_->n(), z.chain.support[1]);
    int vs[6] = {e0.u, e0.v, e1.u, e1.v, 0, 0};
    Edge e2 = edge_unrank(X_->n(), z.chain.support[2]);
    vs[4] = e2.u;
    vs[5] = e2.v;
    std::sort(std::begin(vs), std::end(vs));
    if (vs[0] == vs[1] && vs[2] == vs[3] && vs[4] == vs[5] &&
        vs[0] < vs[2] && vs[2] < vs[4]) {
      Triangle t{vs[0], vs[2], vs[4]};
      if (X_->contains(t)) {
        return FillResult{FillStatus::Feasible, 1,
                          Chain2{{triangle_rank(X_->n(), t)}}, true};
      }
      // No single face other than t itself can fill, and two faces have
      // boundary size 4 or 6, so three is the floor; a cone over some
      // vertex attains it, and every 3-face filling is such a cone.
      for (int w = 0; w < X_->n(); ++w) {
        if (w == t.a || w == t.b || w == t.c) continue;
        Triangle f0 = make_triangle(X_->n(), t.a, t.b, w);
        Triangle f1 = make_triangle(X_->n(), t.a, t.c, w);
        Triangle f2 = make_triangle(X_->n(), t.b, t.c, w);
        if (X_->contains(f0) && X_->contains(f1) && X_->contains(f2)) {
          Chain2 witness{{triangle_rank(X_->n(), f0),
                          triangle_rank(X_->n(), f1),
                          triangle_rank(X_->n(), f2)}};
          std::sort(witness.support.begin(), witness.support.end());
          return FillResult{FillStatus::Feasible, 3, std::move(witness),
                            true};
        }
      }
    }
  }

  std::optional<BitVec> y0 = solver_.solve(zb);
  if (!y0) {
    return FillResult{FillStatus::Infeasible, std::nullopt, std::nullopt,
                      true};
  }
  index_t kernel_dim = static_cast<index_t>(solver_.kernel_basis().size());
  if (kernel_dim == 0) {
    return FillResult{FillStatus::Feasible, y0->popcount(), to_chain2(*y0),
                      true};
  }
  if (kernel_dim <= kCosetExhaustLimit) return fill_by_coset(*y0);
  return fill_by_branch_and_bound(zb, *y0);
}

FillResult FillSolver::fill_by_coset(const BitVec& y0) const {
  BitVec best = coset_minimum(y0, solver_.kernel_basis());
  return FillResult{FillStatus::Feasible, best.popcount(), to_chain2(best),
                    true};
}

namespace {

// Depth-first branch-and-bound state for minimum-weight fills.
struct BnbSearch {
  const std::vector<BitVec>& face_boundaries;
  index_t edge_count;
  index_t best_size;
  BitVec best_faces;  // over face-list positions

  // Kernel dimensions this small are closed exactly by coset sweep
  // instead of further branching.
  static constexpr index_t kSubproblemCosetLimit = 16;

  // Sound lower bound on the number of faces needed to erase `residual`.
  // Each face cancels at most three residual edges. The residual is always
  // a cycle here, so exactly three edges mean a triangle boundary: either
  // some available face is that very triangle, or at least three faces are
  // needed, because any two faces leave four or six boundary edges.
  index_t lower_bound(const BitVec& residual,
                      const std::vector<index_t>& avail) const {
    index_t r = residual.popcount();
    if (r == 0) return 0;
    if (r == 3) {
      for (index_t j : avail) {
        if (face_boundaries[static_cast<std::size_t>(j)] == residual) {
          return 1;
        }
      }
      return 3;
    }
    return (r + 2) / 3;
  }

  void record(const std::vector<index_t>& included, const BitVec& extra) {
    BitVec faces(static_cast<index_t>(face_boundaries.size()));
    for (index_t j : included) faces.set(j);
    faces.xor_in(extra);
    index_t size = faces.popcount();
    if (size < best_size) {
      best_size = size;
      best_faces = faces;
    }
  }

  void search(std::vector<index_t>& avail, BitVec residual,
              std::vector<index_t>& included) {
    index_t depth = static_cast<index_t>(included.size());
    if (residual.is_zero()) {
      record(included, BitVec(static_cast<index_t>(face_boundaries.size())));
      return;
    }
    if (depth + lower_bound(residual, avail) >= best_size) return;

    Gf2Solver solver(
        restricted_boundary(face_boundaries, avail, edge_count));
    std::optional<BitVec> part = solver.solve(residual);
    if (!part) return;

    // Expand the restricted solution back to face-list positions.
    auto expand = [&](const BitVec& local) {
      BitVec global(static_cast<index_t>(face_boundaries.size()));
      for (index_t j : local.ones()) {
        global.set(avail[static_cast<std::size_t>(j)]);
      }
      return global;
    };
    record(included, expand(*part));
    if (depth + lower_bound(residual, avail) >= best_size) return;

    index_t kernel_dim = static_cast<index_t>(solver.kernel_basis().size());
    if (kernel_dim <= kSubproblemCosetLimit) {
      BitVec local_best = coset_minimum(*part, solver.kernel_basis());
      record(included, expand(local_best));
      return;  // subtree solved exactly
    }

    // Branch on the available face meeting the residual in the most
    // edges; ties fall to the lowest face-list position.
    index_t branch = avail.front();
    index_t branch_score = -1;
    for (index_t j : avail) {
      index_t score =
          face_boundaries[static_cast<std::size_t>(j)].and_popcount(residual);
      if (score > branch_score) {
        branch_score = score;
        branch = j;
      }
    }

    std::vector<index_t> rest;
    rest.reserve(avail.size() - 1);
    for (index_t j : avail) {
      if (j != branch) rest.push_back(j);
    }

    // Include branch first: drives the incumbent down quickly.
    BitVec flipped = residual;
    flipped.xor_in(face_boundaries[static_cast<std::size_t>(branch)]);
    included.push_back(branch);
    search(rest, std::move(flipped), included);
    included.pop_back();

    search(rest, std::move(residual), included);
  }
};

}  // namespace

FillResult FillSolver::fill_by_branch_and_bound(const BitVec& z_bits,
                                                const BitVec& y0) const {
  index_t face_count = X_->face_count();
  std::vector<index_t> start = minimal_support(
      face_boundaries_, y0.ones(), X_->edge_count());

  BnbSearch bnb{face_boundaries_, X_->edge_count(),
                static_cast<index_t>(start.size()), BitVec(face_count)};
  for (index_t j : start) bnb.best_faces.set(j);

  std::vector<index_t> avail(static_cast<std::size_t>(face_count));
  for (index_t j = 0; j < face_count; ++j) {
    avail[static_cast<std::size_t>(j)] = j;
  }
  std::vector<index_t> included;
  bnb.search(avail, z_bits, included);

  return FillResult{FillStatus::Feasible, bnb.best_size,
                    to_chain2(bnb.best_faces), true};
}

FillResult fill_exact(const Complex2& X, const Cycle1& z) {
  return FillSolver(X).fill(z);
}

namespace {

struct BruteForceSearch {
  const std::vector<BitVec>& columns;
  const BitVec& target;
  index_t want;
  std::vector<index_t> chosen;
  std::optional<std::vector<index_t>> found;

  void recurse(index_t start, const BitVec& partial) {
    if (found) return;
    if (static_cast<index_t>(chosen.size()) == want) {
      if (partial == target) found = chosen;
      return;
    }
    index_t remaining = want - static_cast<index_t>(chosen.size());
    for (index_t i = start;
         i + remaining <= static_cast<index_t>(columns.size()) && !found;
         ++i) {
      BitVec next = partial;
      next.xor_in(columns[static_cast<std::size_t>(i)]);
      chosen.push_back(i);
      recurse(i + 1, next);
      chosen.pop_back();
    }
  }
};

}  // namespace

FillResult fill_bruteforce(const Complex2& X, const Cycle1& z,
                           index_t max_size) {
  if (max_size < 0) throw InvalidParameter("fill_bruteforce: max_size < 0");
  int n = X.n();
  index_t edge_count = X.edge_count();
  BitVec zb(edge_count);
  for (index_t r : z.chain.support) zb.set(r);

  // Rank test decides feasibility before any enumeration.
  Gf2Matrix plain = boundary_matrix_gf2(X, 2);
  Gf2Matrix augmented(edge_count, X.face_count() + 1);
  for (index_t r = 0; r < edge_count; ++r) {
    for (index_t c : plain.row(r).ones()) augmented.set(r, c);
    if (zb.get(r)) augmented.set(r, X.face_count());
  }
  if (augmented.rank() > plain.rank()) {
    return FillResult{FillStatus::Infeasible, std::nullopt, std::nullopt,
                      true};
  }

  std::vector<BitVec> columns;
  columns.reserve(static_cast<std::size_t>(X.face_count()));
  for (const Triangle& t : X.faces()) {
    columns.push_back(triangle_column(n, t, edge_count));
  }

  index_t cap = std::min<index_t>(max_size, X.face_count());
  for (index_t s = 0; s <= cap; ++s) {
    BruteForceSearch search{columns, zb, s, {}, std::nullopt};
    search.recurse(0, BitVec(edge_count));
    if (search.found) {
      Chain2 witness;
      for (index_t j : *search.found) {
        witness.support.push_back(
            triangle_rank(n, X.faces()[static_cast<std::size_t>(j)]));
      }
      return FillResult{FillStatus::Feasible, s, std::move(witness), true};
    }
  }
  return FillResult{FillStatus::Feasible, std::nullopt, std::nullopt, false};
}

namespace {

// Positions of the given global triangle ranks in X's face list; throws
// if some rank is not a face.
std::vector<index_t> face_positions(const Complex2& X,
                                    const std::vector<index_t>& ranks) {
  std::vector<index_t> out;
  out.reserve(ranks.size());
  for (index_t r : ranks) {
    Triangle t = triangle_unrank(X.n(), r);
    auto it = std::lower_bound(X.faces().begin(), X.faces().end(), t);
    if (it == X.faces().end() || !(*it == t)) {
      throw ContractViolation("chain supported outside the face set");
    }
    out.push_back(static_cast<index_t>(it - X.faces().begin()));
  }
  return out;
}

}  // namespace

Chain2 support_minimalize(const Complex2& X, const Chain2& y,
                          const Cycle1& z) {
  int n = X.n();
  index_t edge_count = X.edge_count();
  std::vector<index_t> positions = face_positions(X, y.support);

  std::vector<BitVec> face_boundaries;
  face_boundaries.reserve(static_cast<std::size_t>(X.face_count()));
  for (const Triangle& t : X.faces()) {
    face_boundaries.push_back(triangle_column(n, t, edge_count));
  }

  BitVec boundary(edge_count);
  for (index_t j : positions) {
    boundary.xor_in(face_boundaries[static_cast<std::size_t>(j)]);
  }
  BitVec zb(edge_count);
  for (index_t r : z.chain.support) zb.set(r);
  if (!(boundary == zb)) {
    throw ContractViolation("support_minimalize: input does not fill z");
  }

  std::vector<index_t> minimal =
      minimal_support(face_boundaries, std::move(positions), edge_count);
  std::sort(minimal.begin(), minimal.end());
  Chain2 out;
  for (index_t j : minimal) {
    out.support.push_back(
        triangle_rank(n, X.faces()[static_cast<std::size_t>(j)]));
  }
  return out;
}

Chain2 extract_minimal_two_cycle(int n, const Chain2& cycle, Triangle tau) {
  tau = make_triangle(n, tau.a, tau.b, tau.c);
  index_t tau_rank = triangle_rank(n, tau);
  index_t edge_count = binomial(n, 2);

  std::vector<index_t> support = cycle.support;
  std::sort(support.begin(), support.end());
  if (!std::binary_search(support.begin(), support.end(), tau_rank)) {
    throw ContractViolation("extract_minimal_two_cycle: cycle misses tau");
  }
  BitVec total(edge_count);
  for (index_t r : support) {
    total.xor_in(triangle_column(n, triangle_unrank(n, r), edge_count));
  }
  if (!total.is_zero()) {
    throw ContractViolation("extract_minimal_two_cycle: input not a 2-cycle");
  }

  BitVec tau_boundary = triangle_column(n, tau, edge_count);

  // Repeatedly try to rewrite the cycle without some face f: if ∂τ is
  // still spanned by the remaining faces, τ plus that filling is a
  // strictly smaller 2-cycle through τ.  At the fixed point no proper
  // sub-2-cycle survives.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t skip = 0; skip < support.size(); ++skip) {
      if (support[skip] == tau_rank) continue;
      std::vector<index_t> others;
      others.reserve(support.size() - 2);
      for (std::size_t j = 0; j < support.size(); ++j) {
        if (j == skip || support[j] == tau_rank) continue;
        others.push_back(support[j]);
      }
      std::vector<BitVec> boundaries;
      boundaries.reserve(others.size());
      for (index_t r : others) {
        boundaries.push_back(
            triangle_column(n, triangle_unrank(n, r), edge_count));
      }
      std::vector<index_t> all(others.size());
      for (std::size_t j = 0; j < others.size(); ++j) {
        all[j] = static_cast<index_t>(j);
      }
      Gf2Solver solver(
          restricted_boundary(boundaries, all, edge_count));
      std::optional<BitVec> y = solver.solve(tau_boundary);
      if (!y) continue;
      std::vector<index_t> next{tau_rank};
      for (index_t j : y->ones()) {
        next.push_back(others[static_cast<std::size_t>(j)]);
      }
      std::sort(next.begin(), next.end());
      support = std::move(next);
      changed = true;
      break;
    }
  }
  return Chain2{std::move(support)};
}

bool nevo_check(int n, const Chain2& two_cycle) {
  std::set<int> vertices;
  for (index_t r : two_cycle.support) {
    Triangle t = triangle_unrank(n, r);
    vertices.insert(t.a);
    vertices.insert(t.b);
    vertices.insert(t.c);
  }
  index_t f0 = static_cast<index_t>(vertices.size());
  index_t f2 = static_cast<index_t>(two_cycle.support.size());
  return 2 * f0 <= f2 + 4;
}

FillSummary all_triangle_fills(const Complex2& X) {
  return all_triangle_fills(FillSolver(X));
}

FillSummary all_triangle_fills(const FillSolver& solver) {
  const Complex2& X = solver.complex();
  int n = X.n();
  index_t total = X.triangle_count();
  FillSummary out;
  out.sizes.resize(static_cast<std::size_t>(total));
  double sum_sq = 0.0;
  for (index_t r = 0; r < total; ++r) {
    FillResult res = solver.fill(triangle_boundary(n, triangle_unrank(n, r)));
    if (res.status == FillStatus::Infeasible) {
      ++out.infeasible;
      continue;
    }
    index_t size = *res.size;
    out.sizes[static_cast<std::size_t>(r)] = size;
    sum_sq += static_cast<double>(size) * static_cast<double>(size);
    if (!out.min || size < *out.min) out.min = size;
    if (!out.max || size > *out.max) out.max = size;
  }
  if (out.infeasible == 0) out.sum_sq = sum_sq;
  return out;
}

}  // namespace filldist
