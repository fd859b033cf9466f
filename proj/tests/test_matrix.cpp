#include <cmath>

#include "doctest.h"
#include "orgsig/matrix.hpp"
#include "orgsig/rng.hpp"

using orgsig::Matrix;

namespace {

Matrix random_spd(int n, std::uint64_t seed) {
  orgsig::Xoshiro256pp rng(seed);
  Matrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = rng.next_normal();
  Matrix a = orgsig::transpose(r) * r;
  for (int i = 0; i < n; ++i) a(i, i) += 0.5;
  return a;
}

}  // namespace

TEST_CASE("identity and multiplication") {
  const Matrix i3 = Matrix::identity(3);
  Matrix a(3, 3);
  int v = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = v++;
  CHECK(orgsig::max_abs_diff(a * i3, a) == 0.0);
  CHECK(orgsig::max_abs_diff(i3 * a, a) == 0.0);
  const Matrix sq = a * a;
  CHECK(sq(0, 0) == doctest::Approx(30.0));
  CHECK(sq(2, 1) == doctest::Approx(126.0));
}

TEST_CASE("transpose and symmetrize") {
  Matrix a(2, 3);
  a(0, 0) = 1.0;
  a(0, 2) = 5.0;
  a(1, 1) = -2.0;
  const Matrix t = orgsig::transpose(a);
  CHECK(t.rows() == 3);
  CHECK(t(2, 0) == 5.0);
  Matrix b(2, 2);
  b(0, 1) = 1.0;
  b(1, 0) = 3.0;
  const Matrix s = orgsig::symmetrize(b);
  CHECK(s(0, 1) == 2.0);
  CHECK(s(1, 0) == 2.0);
}

TEST_CASE("shape mismatches throw") {
  CHECK_THROWS_AS(Matrix(2, 2) + Matrix(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(Matrix(2, 2) * Matrix(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(orgsig::matvec(Matrix(2, 2), std::vector<double>(3)), std::invalid_argument);
  CHECK_THROWS_AS(orgsig::trace(Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("cholesky solves SPD systems") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const Matrix a = random_spd(8, seed);
    const Matrix inv = orgsig::spd_inverse(a);
    CHECK(orgsig::max_abs_diff(a * inv, Matrix::identity(8)) < 1e-9);
  }
}

TEST_CASE("cholesky rejects indefinite matrices") {
  Matrix a = Matrix::identity(3);
  a(2, 2) = -1.0;
  CHECK_THROWS_AS(orgsig::cholesky(a), orgsig::NumericalError);
}

TEST_CASE("norms and reductions") {
  Matrix a(2, 2);
  a(0, 0) = 3.0;
  a(0, 1) = -4.0;
  CHECK(orgsig::frobenius_norm(a) == doctest::Approx(5.0));
  CHECK(orgsig::max_abs(a) == 4.0);
  CHECK(orgsig::trace(a) == 3.0);
  CHECK(orgsig::dot({1.0, 2.0}, {3.0, 4.0}) == 11.0);
  CHECK(orgsig::norm2({3.0, 4.0}) == doctest::Approx(5.0));
}
