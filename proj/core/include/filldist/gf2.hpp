#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "filldist/combinatorics.hpp"

namespace filldist {

/// Fixed-length vector over GF(2), packed 64 bits per word.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(index_t size)
      : size_(size),
        words_(static_cast<std::size_t>((size + 63) / 64), 0ull) {}

  index_t size() const { return size_; }

  bool get(index_t i) const {
    return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1ull;
  }
  void set(index_t i, bool v = true) {
    std::uint64_t mask = 1ull << (i & 63);
    std::uint64_t& w = words_[static_cast<std::size_t>(i >> 6)];
    w = v ? (w | mask) : (w & ~mask);
  }
  void flip(index_t i) {
    words_[static_cast<std::size_t>(i >> 6)] ^= 1ull << (i & 63);
  }

  void xor_in(const BitVec& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
  }

  index_t popcount() const;
  bool is_zero() const;

  /// popcount(this AND o), the GF(2) inner-product workhorse.
  index_t and_popcount(const BitVec& o) const;

  /// Indices of set bits, ascending.
  std::vector<index_t> ones() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  index_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense GF(2) matrix stored as packed rows.
class Gf2Matrix {
 public:
  Gf2Matrix(index_t rows, index_t cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows), BitVec(cols)) {}

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }

  bool get(index_t r, index_t c) const {
    return data_[static_cast<std::size_t>(r)].get(c);
  }
  void set(index_t r, index_t c, bool v = true) {
    data_[static_cast<std::size_t>(r)].set(c, v);
  }

  BitVec& row(index_t r) { return data_[static_cast<std::size_t>(r)]; }
  const BitVec& row(index_t r) const {
    return data_[static_cast<std::size_t>(r)];
  }

  /// Column c as a BitVec of length rows().
  BitVec column(index_t c) const;

  index_t rank() const;

  static Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b);

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  index_t rows_;
  index_t cols_;
  std::vector<BitVec> data_;
};

/// Reduced row echelon factorization of a GF(2) matrix A, recording the
/// row transform T with T*A = RREF.  Supports repeated right-hand sides
/// without re-eliminating, plus a kernel basis.
class Gf2Solver {
 public:
  explicit Gf2Solver(const Gf2Matrix& a);

  index_t rank() const { return rank_; }
  const std::vector<index_t>& pivot_cols() const { return pivot_cols_; }

  /// True iff A x = b has a solution (b of length rows()).
  bool feasible(const BitVec& b) const;

  /// Particular solution with all free variables zero, or nullopt.
  std::optional<BitVec> solve(const BitVec& b) const;

  /// Basis of ker A, one vector per free column, in ascending free-column
  /// order.
  const std::vector<BitVec>& kernel_basis() const { return kernel_; }

 private:
  BitVec apply_transform(const BitVec& b) const;

  index_t rows_;
  index_t cols_;
  index_t rank_ = 0;
  std::vector<BitVec> rref_;
  std::vector<BitVec> transform_;
  std::vector<index_t> pivot_cols_;
  std::vector<BitVec> kernel_;
};

}  // namespace filldist
