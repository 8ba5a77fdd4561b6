#pragma once

#include <optional>
#include <vector>

#include "filldist/complex.hpp"
#include "filldist/gf2.hpp"

namespace filldist {

/// GF(2) 1-chain: sorted support over EdgeIndex ranks.
struct Chain1 {
  std::vector<index_t> support;

  index_t norm() const { return static_cast<index_t>(support.size()); }

  friend bool operator==(const Chain1&, const Chain1&) = default;
};

/// GF(2) 2-chain: sorted support over TriangleIndex ranks.  The ambient
/// complex (X or the complete complex) is supplied by each operation.
struct Chain2 {
  std::vector<index_t> support;

  index_t norm() const { return static_cast<index_t>(support.size()); }

  friend bool operator==(const Chain2&, const Chain2&) = default;
};

/// A Chain1 known to have zero boundary.  Construct via as_cycle.
struct Cycle1 {
  Chain1 chain;
};

/// True iff every vertex meets an even number of supported edges.
bool is_cycle(int n, const Chain1& y);

/// Validates and wraps; throws ContractViolation if y is not a cycle.
Cycle1 as_cycle(int n, Chain1 y);

/// The three edges of τ as a Cycle1.
Cycle1 triangle_boundary(int n, Triangle t);

/// Boundary matrix over GF(2).  k=2: C(n,2) × |faces|, column per face
/// in face-list order.  k=1: n × C(n,2), column per edge.
Gf2Matrix boundary_matrix_gf2(const Complex2& X, int k);

enum class FillStatus { Feasible, Infeasible };

/// Outcome of a minimum-weight fill computation.  size/witness are
/// present iff feasible and the search bound was not exhausted;
/// certified means the reported size is provably optimal (or the
/// infeasibility is proven by rank).
struct FillResult {
  FillStatus status = FillStatus::Infeasible;
  std::optional<index_t> size;
  std::optional<Chain2> witness;
  bool certified = false;
};

/// Factors the degree-2 boundary matrix of X once and answers
/// minimum-weight fill queries Fill_X(z) = min{|y| : ∂y = z} for many
/// cycles z.  Exact: coset exhaustion when the kernel is small, otherwise
/// branch-and-bound with rank feasibility pruning.
class FillSolver {
 public:
  /// Kernel dimensions up to this many bits are exhausted by Gray-code
  /// sweep; larger kernels go to branch-and-bound.
  static constexpr index_t kCosetExhaustLimit = 24;

  explicit FillSolver(const Complex2& X);

  const Complex2& complex() const { return *X_; }

  FillResult fill(const Cycle1& z) const;

 private:
  BitVec cycle_bits(const Cycle1& z) const;
  Chain2 to_chain2(const BitVec& face_bits) const;
  FillResult fill_by_coset(const BitVec& y0) const;
  FillResult fill_by_branch_and_bound(const BitVec& z_bits,
                                      const BitVec& y0) const;

  const Complex2* X_;
  Gf2Matrix boundary2_;
  Gf2Solver solver_;
  std::vector<BitVec> face_boundaries_;  // column of ∂₂ per face
};

/// One-shot exact fill; builds a FillSolver internally.
FillResult fill_exact(const Complex2& X, const Cycle1& z);

/// Independent oracle: iterative deepening over all face subsets of size
/// 0..max_size in lexicographic order.  Infeasibility is decided by a
/// GF(2) rank test before any enumeration.
FillResult fill_bruteforce(const Complex2& X, const Cycle1& z,
                           index_t max_size);

/// Shrinks a filling y of z to a support-minimal one: repeatedly removes
/// nonzero 2-cycles supported inside y.  Throws ContractViolation if
/// ∂y ≠ z.
Chain2 support_minimalize(const Complex2& X, const Chain2& y,
                          const Cycle1& z);

/// Given a 2-cycle in the complete complex on n vertices containing
/// triangle τ, extracts a minimal sub-2-cycle still containing τ
/// (no proper nonempty sub-2-cycle remains).
Chain2 extract_minimal_two_cycle(int n, const Chain2& cycle, Triangle tau);

/// Evaluates the vertex-count bound f₀ ≤ (f₂ + 4)/2 on a 2-cycle given
/// as a face set in the complete complex.  Minimality of the cycle is
/// the caller's obligation.
bool nevo_check(int n, const Chain2& two_cycle);

/// Per-triangle fill statistics over all C(n,3) triangle boundaries.
struct FillSummary {
  std::vector<std::optional<index_t>> sizes;  // TriangleIndex order
  index_t infeasible = 0;
  std::optional<index_t> min;     // over feasible triangles
  std::optional<index_t> max;     // over feasible triangles
  std::optional<double> sum_sq;   // present only when infeasible == 0
};

FillSummary all_triangle_fills(const Complex2& X);
FillSummary all_triangle_fills(const FillSolver& solver);

}  // namespace filldist
