#pragma once

#include <cstdint>
#include <vector>

#include "realposet/errors.hpp"

namespace rp {

// Dense matrix over the prime field Z/p. Entries are stored reduced to
// [0, p). All algorithms are deterministic: eliminations scan rows and
// columns in increasing order, so equal inputs give bit-identical outputs.
class FpMatrix {
 public:
  FpMatrix() : rows_(0), cols_(0), p_(2) {}
  FpMatrix(int rows, int cols, std::int64_t p);

  static FpMatrix identity(int n, std::int64_t p);
  static FpMatrix zero(int rows, int cols, std::int64_t p) { return FpMatrix(rows, cols, p); }
  static FpMatrix from_rows(const std::vector<std::vector<std::int64_t>>& entries, std::int64_t p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t p() const { return p_; }

  std::int64_t at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  void set(int i, int j, std::int64_t v);

  bool operator==(const FpMatrix& o) const = default;

  FpMatrix operator*(const FpMatrix& o) const;
  FpMatrix operator+(const FpMatrix& o) const;
  FpMatrix operator-(const FpMatrix& o) const;
  FpMatrix scaled(std::int64_t c) const;
  FpMatrix transposed() const;

  // Stacks blocks: [this; below] resp. [this | right].
  FpMatrix vstack(const FpMatrix& below) const;
  FpMatrix hstack(const FpMatrix& right) const;
  // Block diagonal [this 0; 0 other].
  FpMatrix direct_sum(const FpMatrix& other) const;

  FpMatrix submatrix(int row0, int col0, int nrows, int ncols) const;

  bool is_zero() const;

  int rank() const;
  // Reduced row echelon form; pivot column indices come out in increasing order.
  FpMatrix rref(std::vector<int>* pivot_cols = nullptr) const;
  // Columns form a basis of the kernel (right null space); deterministic.
  FpMatrix kernel_basis() const;
  // The pivot columns of the matrix itself: a basis of the column space.
  FpMatrix image_basis() const;

  // Solves this * X = rhs. Throws DimensionMismatch on shape errors and
  // PreconditionFailed when the system is inconsistent.
  FpMatrix solve(const FpMatrix& rhs) const;
  // A right inverse: this * S = id. Requires full row rank.
  FpMatrix right_inverse() const;
  // Inverse of a square invertible matrix.
  FpMatrix inverse() const;

  // Projection onto the cokernel of this matrix: a (rows - rank) x rows
  // matrix Q with Q * this = 0 and Q surjective. Q is obtained by extending
  // a column-space basis with unit vectors (lowest index first) and
  // inverting, so it is deterministic.
  FpMatrix cokernel_projection() const;

 private:
  int rows_, cols_;
  std::int64_t p_;
  std::vector<std::int32_t> data_;

  void check_same_field(const FpMatrix& o) const;
};

// Throws NotPrime unless p is a prime small enough for safe arithmetic.
void check_prime(std::int64_t p);

// Extends the columns of `basis` (assumed independent, n rows) to a basis of
// the full space by unit vectors, chosen greedily in increasing index order.
// Returns the n x n invertible matrix [basis | chosen units].
FpMatrix complete_basis(const FpMatrix& basis);

}  // namespace rp
