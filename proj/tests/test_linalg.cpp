#include <doctest.h>

#include <random>

#include "realposet/fpmatrix.hpp"

using namespace rp;

namespace {

FpMatrix random_matrix(std::mt19937& rng, int rows, int cols, std::int64_t p) {
  FpMatrix M = FpMatrix::zero(rows, cols, p);
  std::uniform_int_distribution<int> d(0, static_cast<int>(p) - 1);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) M.set(r, c, d(rng));
  return M;
}

}  // namespace

TEST_CASE("prime validation") {
  CHECK_THROWS_AS(check_prime(1), NotPrime);
  CHECK_THROWS_AS(check_prime(4), NotPrime);
  CHECK_THROWS_AS(check_prime(1073741827), NotPrime);  // above the cap
  CHECK_NOTHROW(check_prime(2));
  CHECK_NOTHROW(check_prime(97));
}

TEST_CASE("arithmetic and normalization") {
  FpMatrix A = FpMatrix::zero(2, 2, 5);
  A.set(0, 0, 7);    // 2 mod 5
  A.set(0, 1, -1);   // 4 mod 5
  CHECK(A.at(0, 0) == 2);
  CHECK(A.at(0, 1) == 4);
  const FpMatrix I = FpMatrix::identity(2, 5);
  CHECK(A * I == A);
  CHECK(I * A == A);
  CHECK((A + A.scaled(4)).is_zero());  // A - A over F_5
  CHECK((A - A).is_zero());
  CHECK(A.transposed().transposed() == A);
}

TEST_CASE("rref rank kernel image") {
  // rank-2 matrix over F_2 with a known kernel
  const FpMatrix A = FpMatrix::from_rows({{1, 0, 1}, {0, 1, 1}, {1, 1, 0}}, 2);
  CHECK(A.rank() == 2);
  const FpMatrix K = A.kernel_basis();
  CHECK(K.cols() == 1);
  CHECK((A * K).is_zero());
  const FpMatrix im = A.image_basis();
  CHECK(im.cols() == 2);
  CHECK(im.rank() == 2);
}

TEST_CASE("solve and inverses") {
  const FpMatrix A = FpMatrix::from_rows({{1, 2}, {3, 4}}, 5);
  const FpMatrix b = FpMatrix::from_rows({{1}, {0}}, 5);
  const FpMatrix x = A.solve(b);
  CHECK(A * x == b);
  const FpMatrix Ainv = A.inverse();
  CHECK(A * Ainv == FpMatrix::identity(2, 5));
  CHECK(Ainv * A == FpMatrix::identity(2, 5));

  // inconsistent system
  const FpMatrix S = FpMatrix::from_rows({{1, 0}, {1, 0}}, 5);
  const FpMatrix c = FpMatrix::from_rows({{1}, {2}}, 5);
  CHECK_THROWS_AS(S.solve(c), PreconditionFailed);

  const FpMatrix wide = FpMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}, 3);
  const FpMatrix R = wide.right_inverse();
  CHECK(wide * R == FpMatrix::identity(2, 3));
}

TEST_CASE("cokernel projection and basis completion") {
  const FpMatrix A = FpMatrix::from_rows({{1, 1}, {1, 1}, {0, 1}}, 2);
  const FpMatrix Q = A.cokernel_projection();
  CHECK(Q.rows() == 3 - A.rank());
  CHECK((Q * A).is_zero());
  CHECK(Q.rank() == Q.rows());

  const FpMatrix basis = FpMatrix::from_rows({{1}, {1}, {0}}, 2);
  const FpMatrix full = complete_basis(basis);
  CHECK(full.rows() == 3);
  CHECK(full.cols() == 3);
  CHECK(full.rank() == 3);
  for (int r = 0; r < 3; ++r) CHECK(full.at(r, 0) == basis.at(r, 0));

  const FpMatrix dependent = FpMatrix::from_rows({{1, 1}, {1, 1}}, 2);
  CHECK_THROWS_AS(complete_basis(dependent), PreconditionFailed);
}

TEST_CASE("stacking") {
  const FpMatrix A = FpMatrix::from_rows({{1, 2}}, 5);
  const FpMatrix B = FpMatrix::from_rows({{3, 4}}, 5);
  const FpMatrix V = A.vstack(B);
  CHECK(V.rows() == 2);
  CHECK(V.at(1, 0) == 3);
  const FpMatrix H = A.hstack(B);
  CHECK(H.cols() == 4);
  CHECK(H.at(0, 2) == 3);
  const FpMatrix D = A.direct_sum(B);
  CHECK(D.rows() == 2);
  CHECK(D.cols() == 4);
  CHECK(D.at(0, 0) == 1);
  CHECK(D.at(1, 2) == 3);
  CHECK(D.at(0, 2) == 0);
}

TEST_CASE("rank nullity and projections on random matrices") {
  std::mt19937 rng(11);
  for (const std::int64_t p : {2LL, 5LL, 97LL}) {
    for (int t = 0; t < 40; ++t) {
      const int rows = 1 + static_cast<int>(rng() % 5);
      const int cols = 1 + static_cast<int>(rng() % 5);
      const FpMatrix A = random_matrix(rng, rows, cols, p);
      const int r = A.rank();
      CHECK(A.kernel_basis().cols() == cols - r);
      CHECK((A * A.kernel_basis()).is_zero());
      CHECK(A.image_basis().cols() == r);
      const FpMatrix Q = A.cokernel_projection();
      CHECK(Q.rows() == rows - r);
      CHECK((Q * A).is_zero());

      // consistent systems solve exactly
      const FpMatrix x = random_matrix(rng, cols, 1, p);
      const FpMatrix b = A * x;
      CHECK(A * A.solve(b) == b);
    }
  }
}
