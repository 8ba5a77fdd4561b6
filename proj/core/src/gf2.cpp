#include "filldist/gf2.hpp"

#include <bit>

#include "filldist/errors.hpp"

namespace filldist {

index_t BitVec::popcount() const {
  index_t total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool BitVec::is_zero() const {
  for (std::uint64_t w : words_) {
    if (w) return false;
  }
  return true;
}

index_t BitVec::and_popcount(const BitVec& o) const {
  index_t total = 0;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    total += std::popcount(words_[k] & o.words_[k]);
  }
  return total;
}

std::vector<index_t> BitVec::ones() const {
  std::vector<index_t> out;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    std::uint64_t w = words_[k];
    while (w) {
      int bit = std::countr_zero(w);
      out.push_back(static_cast<index_t>(k) * 64 + bit);
      w &= w - 1;
    }
  }
  return out;
}

BitVec Gf2Matrix::column(index_t c) const {
  BitVec out(rows_);
  for (index_t r = 0; r < rows_; ++r) {
    if (get(r, c)) out.set(r);
  }
  return out;
}

index_t Gf2Matrix::rank() const {
  std::vector<BitVec> work = data_;
  index_t r = 0;
  for (index_t c = 0; c < cols_ && r < rows_; ++c) {
    index_t pivot = -1;
    for (index_t i = r; i < rows_; ++i) {
      if (work[static_cast<std::size_t>(i)].get(c)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(work[static_cast<std::size_t>(pivot)],
              work[static_cast<std::size_t>(r)]);
    for (index_t i = r + 1; i < rows_; ++i) {
      if (work[static_cast<std::size_t>(i)].get(c)) {
        work[static_cast<std::size_t>(i)].xor_in(
            work[static_cast<std::size_t>(r)]);
      }
    }
    ++r;
  }
  return r;
}

Gf2Matrix Gf2Matrix::multiply(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ContractViolation("Gf2Matrix::multiply: dimension mismatch");
  }
  Gf2Matrix out(a.rows(), b.cols());
  for (index_t r = 0; r < a.rows(); ++r) {
    for (index_t k : a.row(r).ones()) {
      out.row(r).xor_in(b.row(k));
    }
  }
  return out;
}

Gf2Solver::Gf2Solver(const Gf2Matrix& a) : rows_(a.rows()), cols_(a.cols()) {
  rref_.reserve(static_cast<std::size_t>(rows_));
  transform_.reserve(static_cast<std::size_t>(rows_));
  for (index_t r = 0; r < rows_; ++r) {
    rref_.push_back(a.row(r));
    BitVec t(rows_);
    t.set(r);
    transform_.push_back(std::move(t));
  }

  for (index_t c = 0; c < cols_ && rank_ < rows_; ++c) {
    index_t pivot = -1;
    for (index_t i = rank_; i < rows_; ++i) {
      if (rref_[static_cast<std::size_t>(i)].get(c)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rref_[static_cast<std::size_t>(pivot)],
              rref_[static_cast<std::size_t>(rank_)]);
    std::swap(transform_[static_cast<std::size_t>(pivot)],
              transform_[static_cast<std::size_t>(rank_)]);
    for (index_t i = 0; i < rows_; ++i) {
      if (i == rank_) continue;
      if (rref_[static_cast<std::size_t>(i)].get(c)) {
        rref_[static_cast<std::size_t>(i)].xor_in(
            rref_[static_cast<std::size_t>(rank_)]);
        transform_[static_cast<std::size_t>(i)].xor_in(
            transform_[static_cast<std::size_t>(rank_)]);
      }
    }
    pivot_cols_.push_back(c);
    ++rank_;
  }

  // Kernel basis: one vector per free column f, with the pivot rows
  // back-substituted.
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
  for (index_t c : pivot_cols_) is_pivot[static_cast<std::size_t>(c)] = true;
  for (index_t f = 0; f < cols_; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    BitVec v(cols_);
    v.set(f);
    for (index_t i = 0; i < rank_; ++i) {
      if (rref_[static_cast<std::size_t>(i)].get(f)) {
        v.set(pivot_cols_[static_cast<std::size_t>(i)]);
      }
    }
    kernel_.push_back(std::move(v));
  }
}

BitVec Gf2Solver::apply_transform(const BitVec& b) const {
  BitVec out(rows_);
  for (index_t i = 0; i < rows_; ++i) {
    if (transform_[static_cast<std::size_t>(i)].and_popcount(b) & 1) {
      out.set(i);
    }
  }
  return out;
}

bool Gf2Solver::feasible(const BitVec& b) const {
  if (b.size() != rows_) {
    throw ContractViolation("Gf2Solver::feasible: RHS length mismatch");
  }
  BitVec tb = apply_transform(b);
  for (index_t i = rank_; i < rows_; ++i) {
    if (tb.get(i)) return false;
  }
  return true;
}

std::optional<BitVec> Gf2Solver::solve(const BitVec& b) const {
  if (b.size() != rows_) {
    throw ContractViolation("Gf2Solver::solve: RHS length mismatch");
  }
  BitVec tb = apply_transform(b);
  for (index_t i = rank_; i < rows_; ++i) {
    if (tb.get(i)) return std::nullopt;
  }
  BitVec x(cols_);
  for (index_t i = 0; i < rank_; ++i) {
    if (tb.get(i)) x.set(pivot_cols_[static_cast<std::size_t>(i)]);
  }
  return x;
}

}  // namespace filldist
