#include "realposet/fpmatrix.hpp"

#include <string>

namespace rp {

namespace {

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) { return mod_pow(a, p - 2, p); }

}  // namespace

void check_prime(std::int64_t p) {
  if (p < 2) throw NotPrime("modulus must be a prime >= 2, got " + std::to_string(p));
  // Entries are multiplied as 64-bit integers; keep p*p well below overflow.
  if (p > (1LL << 30)) throw NotPrime("modulus too large: " + std::to_string(p));
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw NotPrime(std::to_string(p) + " is not prime");
}

FpMatrix::FpMatrix(int rows, int cols, std::int64_t p) : rows_(rows), cols_(cols), p_(p) {
  check_prime(p);
  if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
  data_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

FpMatrix FpMatrix::identity(int n, std::int64_t p) {
  FpMatrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& entries, std::int64_t p) {
  const int r = static_cast<int>(entries.size());
  const int c = r == 0 ? 0 : static_cast<int>(entries[0].size());
  FpMatrix m(r, c, p);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(entries[i].size()) != c)
      throw DimensionMismatch("ragged row lengths in matrix literal");
    for (int j = 0; j < c; ++j) m.set(i, j, entries[i][j]);
  }
  return m;
}

void FpMatrix::set(int i, int j, std::int64_t v) {
  v %= p_;
  if (v < 0) v += p_;
  data_[static_cast<std::size_t>(i) * cols_ + j] = static_cast<std::int32_t>(v);
}

void FpMatrix::check_same_field(const FpMatrix& o) const {
  if (p_ != o.p_) throw DimensionMismatch("mixed moduli in matrix arithmetic");
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  check_same_field(o);
  if (cols_ != o.rows_)
    throw DimensionMismatch("product shape mismatch: " + std::to_string(cols_) + " vs " +
                            std::to_string(o.rows_));
  FpMatrix r(rows_, o.cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const std::int64_t a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const std::int64_t v = (r.at(i, j) + a * o.at(k, j)) % p_;
        r.data_[static_cast<std::size_t>(i) * r.cols_ + j] = static_cast<std::int32_t>(v);
      }
    }
  return r;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
  check_same_field(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("sum shape mismatch");
  FpMatrix r(rows_, cols_, p_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] = static_cast<std::int32_t>((data_[i] + static_cast<std::int64_t>(o.data_[i])) % p_);
  return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const { return *this + o.scaled(p_ - 1); }

FpMatrix FpMatrix::scaled(std::int64_t c) const {
  c %= p_;
  if (c < 0) c += p_;
  FpMatrix r(rows_, cols_, p_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] = static_cast<std::int32_t>(data_[i] * c % p_);
  return r;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix r(cols_, rows_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

FpMatrix FpMatrix::vstack(const FpMatrix& below) const {
  check_same_field(below);
  if (cols_ != below.cols_) throw DimensionMismatch("vstack column mismatch");
  FpMatrix r(rows_ + below.rows_, cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
  for (int i = 0; i < below.rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(rows_ + i, j, below.at(i, j));
  return r;
}

FpMatrix FpMatrix::hstack(const FpMatrix& right) const {
  check_same_field(right);
  if (rows_ != right.rows_) throw DimensionMismatch("hstack row mismatch");
  FpMatrix r(rows_, cols_ + right.cols_, p_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
    for (int j = 0; j < right.cols_; ++j) r.set(i, cols_ + j, right.at(i, j));
  }
  return r;
}

FpMatrix FpMatrix::direct_sum(const FpMatrix& other) const {
  check_same_field(other);
  FpMatrix r(rows_ + other.rows_, cols_ + other.cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
  for (int i = 0; i < other.rows_; ++i)
    for (int j = 0; j < other.cols_; ++j) r.set(rows_ + i, cols_ + j, other.at(i, j));
  return r;
}

FpMatrix FpMatrix::submatrix(int row0, int col0, int nrows, int ncols) const {
  if (row0 < 0 || col0 < 0 || row0 + nrows > rows_ || col0 + ncols > cols_)
    throw DimensionMismatch("submatrix out of range");
  FpMatrix r(nrows, ncols, p_);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) r.set(i, j, at(row0 + i, col0 + j));
  return r;
}

bool FpMatrix::is_zero() const {
  for (const auto v : data_)
    if (v != 0) return false;
  return true;
}

FpMatrix FpMatrix::rref(std::vector<int>* pivot_cols) const {
  FpMatrix m = *this;
  if (pivot_cols) pivot_cols->clear();
  int lead = 0;
  for (int col = 0; col < cols_ && lead < rows_; ++col) {
    int piv = -1;
    for (int i = lead; i < rows_; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead)
      for (int j = 0; j < cols_; ++j) {
        const auto t = m.at(lead, j);
        m.set(lead, j, m.at(piv, j));
        m.set(piv, j, t);
      }
    const std::int64_t inv = mod_inv(m.at(lead, col), p_);
    for (int j = 0; j < cols_; ++j) m.set(lead, j, m.at(lead, j) * inv % p_);
    for (int i = 0; i < rows_; ++i) {
      if (i == lead) continue;
      const std::int64_t f = m.at(i, col);
      if (f == 0) continue;
      for (int j = 0; j < cols_; ++j)
        m.set(i, j, m.at(i, j) - f * m.at(lead, j) % p_);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++lead;
  }
  return m;
}

int FpMatrix::rank() const {
  std::vector<int> piv;
  rref(&piv);
  return static_cast<int>(piv.size());
}

FpMatrix FpMatrix::kernel_basis() const {
  std::vector<int> piv;
  const FpMatrix r = rref(&piv);
  std::vector<bool> is_pivot(cols_, false);
  for (const int c : piv) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FpMatrix k(cols_, static_cast<int>(free_cols.size()), p_);
  for (int idx = 0; idx < static_cast<int>(free_cols.size()); ++idx) {
    const int fc = free_cols[idx];
    k.set(fc, idx, 1);
    for (int i = 0; i < static_cast<int>(piv.size()); ++i)
      k.set(piv[i], idx, -r.at(i, fc));
  }
  return k;
}

FpMatrix FpMatrix::image_basis() const {
  std::vector<int> piv;
  rref(&piv);
  FpMatrix b(rows_, static_cast<int>(piv.size()), p_);
  for (int idx = 0; idx < static_cast<int>(piv.size()); ++idx)
    for (int i = 0; i < rows_; ++i) b.set(i, idx, at(i, piv[idx]));
  return b;
}

FpMatrix FpMatrix::solve(const FpMatrix& rhs) const {
  check_same_field(rhs);
  if (rhs.rows_ != rows_) throw DimensionMismatch("solve: rhs row mismatch");
  std::vector<int> piv;
  const FpMatrix aug = hstack(rhs).rref(&piv);
  // Any pivot landing in the rhs block certifies inconsistency.
  for (const int c : piv)
    if (c >= cols_) throw PreconditionFailed("linear system has no solution");
  FpMatrix x(cols_, rhs.cols_, p_);
  for (int i = 0; i < static_cast<int>(piv.size()); ++i)
    for (int j = 0; j < rhs.cols_; ++j) x.set(piv[i], j, aug.at(i, cols_ + j));
  return x;
}

FpMatrix FpMatrix::right_inverse() const {
  FpMatrix s = solve(identity(rows_, p_));
  return s;
}

FpMatrix FpMatrix::inverse() const {
  if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
  FpMatrix inv = solve(identity(rows_, p_));
  if (!((*this * inv) == identity(rows_, p_)))
    throw PreconditionFailed("matrix is singular");
  return inv;
}

FpMatrix FpMatrix::cokernel_projection() const {
  const FpMatrix img = image_basis();
  const FpMatrix basis = complete_basis(img);
  const FpMatrix inv = basis.inverse();
  return inv.submatrix(img.cols(), 0, rows_ - img.cols(), rows_);
}

FpMatrix complete_basis(const FpMatrix& basis) {
  const int n = basis.rows();
  // One elimination of [basis | id] picks pivots left to right, which is
  // exactly the greedy lowest-index unit-vector completion.
  const FpMatrix aug = basis.hstack(FpMatrix::identity(n, basis.p()));
  std::vector<int> piv;
  aug.rref(&piv);
  if (static_cast<int>(piv.size()) != n)
    throw PreconditionFailed("complete_basis: elimination lost rank");
  for (int j = 0; j < basis.cols(); ++j)
    if (j >= static_cast<int>(piv.size()) || piv[j] != j)
      throw PreconditionFailed("complete_basis: columns not independent");
  FpMatrix out(n, n, basis.p());
  for (int idx = 0; idx < n; ++idx)
    for (int i = 0; i < n; ++i) out.set(i, idx, aug.at(i, piv[idx]));
  return out;
}

}  // namespace rp
