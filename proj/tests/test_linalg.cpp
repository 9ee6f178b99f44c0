#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tacx/error.hpp"
#include "tacx/linalg.hpp"

using namespace tacx;

namespace {

oracle::Mat to_oracle(const Matrix& m) {
  oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

Matrix random_matrix(std::mt19937_64& rng, const PrimeField& F, std::size_t rows, std::size_t cols, int density) {
  Matrix m(F, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (static_cast<int>(rng() % 10) < density) m(r, c) = static_cast<Residue>(rng() % F.modulus());
  return m;
}

}  // namespace

TEST_CASE("field rejects p = 2 and composites") {
  CHECK_THROWS_AS(PrimeField(2), ConfigError);
  CHECK_THROWS_AS(PrimeField(9), ConfigError);
  CHECK_THROWS_AS(PrimeField(1), ConfigError);
  CHECK_NOTHROW(PrimeField(3));
  CHECK(PrimeField().modulus() == 32003);
}

TEST_CASE("field arithmetic") {
  const PrimeField F(7);
  CHECK(F.reduce(-1) == 6);
  CHECK(F.mul(3, F.inv(3)) == 1);
  CHECK(F.signed_value(6) == -1);
  CHECK_THROWS(F.inv(0));
}

TEST_CASE("rref of a small matrix") {
  const PrimeField F(5);
  const Matrix m = Matrix::from_rows(F, {{1, 2, 3}, {2, 4, 2}});
  const Echelon e = rref(m);
  CHECK(e.pivots == std::vector<std::size_t>{0, 2});
  CHECK(e.reduced == Matrix::from_rows(F, {{1, 2, 0}, {0, 0, 1}}));
  CHECK(rank(m) == 2);
  const Matrix k = kernel_basis(m);
  CHECK(k.cols() == 1);
  CHECK((m * k).is_zero());
}

TEST_CASE("rank, kernel and inverse agree with the oracle") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {3u, 5u, 101u, 32003u}) {
    const PrimeField F(p);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
      const Matrix m = random_matrix(rng, F, rows, cols, 1 + static_cast<int>(rng() % 9));
      const std::size_t r = oracle::rank(to_oracle(m), cols, p);
      CHECK(rank(m) == r);
      const Matrix k = kernel_basis(m);
      CHECK(k.cols() == cols - r);
      CHECK((m * k).is_zero());
      CHECK(rank(k) == k.cols());

      std::vector<Residue> scratch(m.data().begin(), m.data().end());
      CHECK(rank_in_place(F, scratch, rows, cols) == r);

      if (rows == cols) {
        const auto inv = invert(m);
        CHECK(inv.has_value() == (r == rows));
        if (inv) {
          CHECK((m * *inv).is_identity());
          CHECK((*inv * m).is_identity());
        }
      }
    }
  }
}

TEST_CASE("membership returns a solution exactly when one exists") {
  std::mt19937_64 rng(5);
  const PrimeField F(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_matrix(rng, F, 4, 3, 5);
    Vector v(4);
    for (auto& x : v) x = static_cast<Residue>(rng() % 7);
    oracle::Mat aug = to_oracle(m);
    for (std::size_t r = 0; r < 4; ++r) aug[r].push_back(v[r]);
    const bool solvable = oracle::rank(aug, 4, 7) == oracle::rank(to_oracle(m), 3, 7);
    const auto x = membership(m, v);
    CHECK(x.has_value() == solvable);
    if (x) CHECK(m.apply(*x) == v);
  }
}

TEST_CASE("matrix algebra") {
  const PrimeField F(11);
  const Matrix a = Matrix::from_rows(F, {{1, 2}, {3, 4}});
  CHECK(a * Matrix::identity(F, 2) == a);
  CHECK((a + a.scaled(10)).is_zero());
  CHECK(a.transpose().transpose() == a);
  CHECK(a.column(1) == Vector{2, 4});
  CHECK_THROWS(a * Matrix(F, 3, 1));
}
