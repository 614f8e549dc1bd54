#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "latnet/error.hpp"

namespace latnet {

class LogicalMatrix;

/// Small dense integer matrix, row-major. Used for the general semi-tensor
/// product and for column differences of logical matrices.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries);

  static IntMatrix identity(std::size_t n);
  /// Dense expansion of a logical matrix.
  static IntMatrix from(const LogicalMatrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::vector<std::int64_t> column(std::size_t c) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix kron(const IntMatrix& a, const IntMatrix& b);

/// A 0/1 matrix whose every column is a standard basis vector.
///
/// Stored as the row position of the single 1 in each column. The storage is
/// 0-based; the `delta` factory and `delta_indices` speak the 1-based
/// δ_rows[i_1,...,i_n] notation.
class LogicalMatrix {
 public:
  /// `images[j]` is the 0-based row of the 1 in column j.
  LogicalMatrix(std::size_t rows, std::vector<std::uint32_t> images);

  /// δ_rows[i_1,...,i_n] with 1-based indices.
  static LogicalMatrix delta(std::size_t rows, std::span<const std::size_t> indices);
  static LogicalMatrix delta(std::size_t rows, std::initializer_list<std::size_t> indices);
  static LogicalMatrix identity(std::size_t n);
  /// Basis column vector δ_n^{i+1} (i is 0-based).
  static LogicalMatrix basis(std::size_t n, std::size_t i);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return images_.size(); }

  /// 0-based row of the 1 in 0-based column `c`.
  std::size_t operator[](std::size_t c) const { return images_[c]; }
  std::span<const std::uint32_t> images() const noexcept { return images_; }

  /// 1-based column indices, as printed in δ notation.
  std::vector<std::size_t> delta_indices() const;

  /// Columns [first, first + count).
  LogicalMatrix block(std::size_t first, std::size_t count) const;

  bool is_identity() const;

  /// "δ_4[1,2,3]" style rendering.
  std::string to_string() const;

  friend bool operator==(const LogicalMatrix&, const LogicalMatrix&) = default;

 private:
  std::size_t rows_;
  std::vector<std::uint32_t> images_;
};

std::size_t lcm(std::size_t a, std::size_t b);
/// base^exp with overflow detection (throws DimensionError).
std::size_t checked_pow(std::size_t base, std::size_t exp);

/// Semi-tensor product (A ⊗ I_{t/n})(B ⊗ I_{t/p}), t = lcm(n, p).
IntMatrix stp(const IntMatrix& a, const IntMatrix& b);
/// Logical fast path; equals the dense product bit for bit.
LogicalMatrix stp(const LogicalMatrix& a, const LogicalMatrix& b);
/// Left-to-right semi-tensor product of a chain of logical matrices.
LogicalMatrix stp_chain(std::initializer_list<LogicalMatrix> factors);

LogicalMatrix kron(const LogicalMatrix& a, const LogicalMatrix& b);

/// Swap matrix W_[m,n]: W ⋉ x ⋉ y = y ⋉ x for x ∈ Δ_m, y ∈ Δ_n.
LogicalMatrix swap_matrix(std::size_t m, std::size_t n);

/// Column j of the result stacks column j of every factor.
LogicalMatrix khatri_rao(std::span<const LogicalMatrix> factors);

/// Power-reducing matrix M_r with x ⋉ x = M_r ⋉ x for x ∈ Δ_k.
LogicalMatrix power_reduce_matrix(std::size_t k);

/// Retrieval matrix R_i = 1_{k^{i-1}} ⊗ I_k ⊗ 1_{k^{n-i}}, 1 ≤ i ≤ n.
/// Picks the i-th factor out of a stacked state x_1 ⋉ ... ⋉ x_n.
LogicalMatrix retrieval_matrix(std::size_t k, std::size_t n, std::size_t i);

/// Index of x_1 ⋉ ... ⋉ x_n from 0-based digits (most significant first).
std::size_t stack_index(std::span<const std::size_t> digits, std::size_t base);
/// Inverse of stack_index.
std::vector<std::size_t> unstack_index(std::size_t index, std::size_t base, std::size_t count);

}  // namespace latnet
