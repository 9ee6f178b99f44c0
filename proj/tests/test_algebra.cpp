#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tacx/error.hpp"

using namespace tacx;

namespace {

// The library and the oracle use different degree-2 coordinates. Two linear
// maps out of the same space agree up to an isomorphism of the target exactly
// when rank(L) = rank(O) = rank([L; O]).
void check_same_multiplication(const Presentation& p, std::uint32_t prime) {
  const PrimeField F(prime);
  const AlgebraPtr alg = make_algebra(p, F);
  const oracle::Algebra model = oracle::build(p, prime);
  REQUIRE(alg->dim2() == model.d);
  const std::size_t n = alg->dim1();
  const std::size_t cols = n * n;
  oracle::Mat lib(alg->dim2(), oracle::Vec(cols)), ora(model.d, oracle::Vec(cols));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = alg->reduce(i, j);
      const auto w = model.image_of_monomial(i, j);
      for (std::size_t t = 0; t < alg->dim2(); ++t) {
        lib[t][i * n + j] = v[t];
        ora[t][i * n + j] = w[t];
      }
    }
  oracle::Mat both = lib;
  both.insert(both.end(), ora.begin(), ora.end());
  const auto r = oracle::rank(lib, cols, prime);
  CHECK(r == alg->dim2());
  CHECK(oracle::rank(ora, cols, prime) == r);
  CHECK(oracle::rank(both, cols, prime) == r);
}

}  // namespace

TEST_CASE("dimensions of the fixtures") {
  struct Case {
    const char* name;
    std::size_t n, d;
  };
  for (const Case c : {Case{"exnew_r1.ring", 3, 2}, Case{"exnew_r.ring", 6, 5}, Case{"ex1_r1.ring", 5, 4},
                       Case{"ex1_s1.ring", 5, 4}, Case{"ex1_r.ring", 10, 9}, Case{"counterex_r.ring", 6, 3},
                       Case{"gorenstein_pair.ring", 3, 1}}) {
    CAPTURE(c.name);
    const Presentation p = support::ring(c.name);
    const AlgebraPtr alg = make_algebra(p, PrimeField());
    CHECK(alg->dim1() == c.n);
    CHECK(alg->dim2() == c.d);
    const oracle::Algebra model = oracle::build(p, PrimeField::kDefaultPrime);
    CHECK(model.d == c.d);
    check_same_multiplication(p, PrimeField::kDefaultPrime);
  }
}

TEST_CASE("counterexample ring has n = 6, d = 3") {
  const AlgebraPtr alg = support::algebra("counterex_r.ring");
  CHECK(alg->dim1() == 6);
  CHECK(alg->dim2() == 3);
  const YoshinoReport y = yoshino_check(*alg);
  CHECK_FALSE(y.dim_condition);
  CHECK(y.quadric_defined);
}

TEST_CASE("degree-2 basis is the lex-ordered non-pivot monomials") {
  const AlgebraPtr alg = support::algebra("exnew_r1.ring");
  // x1^2, y1^2, z1^2, x1*y1 vanish; x1*z1 and y1*z1 survive
  using P = std::pair<std::size_t, std::size_t>;
  CHECK(alg->basis_monomials() == std::vector<P>{{0, 2}, {1, 2}});
  CHECK(alg->product(alg->variable(2).v1, alg->variable(2).v1) == Vector{0, 0});
}

TEST_CASE("lifted ring: z1^2 is zero in R_1 and equals f in R_0") {
  const LiftedRing lr = make_lifted_ring(support::ring("exnew_r1.ring"), PrimeField());
  const Vector z = lr.quotient->variable(2).v1;
  CHECK(lr.quotient->product(z, z) == Vector(lr.quotient->dim2(), 0));
  CHECK(lr.cover->product(z, z) == lr.f);
  CHECK(lr.f != Vector(lr.cover->dim2(), 0));
  CHECK(lr.cover->dim2() == lr.quotient->dim2() + 1);
  Presentation plain = support::ring("exnew_r1.ring");
  plain.distinguished.reset();
  CHECK_THROWS_AS(make_lifted_ring(plain, PrimeField()), ValidationError);
}

TEST_CASE("socle and Gorenstein property against the oracle") {
  for (const char* name : {"exnew_r1.ring", "exnew_r.ring", "ex1_r1.ring", "ex1_r.ring", "counterex_r.ring",
                           "gorenstein_pair.ring"}) {
    CAPTURE(name);
    const Presentation p = support::ring(name);
    const AlgebraPtr alg = make_algebra(p, PrimeField());
    const auto model = oracle::build(p, PrimeField::kDefaultPrime);
    CHECK(socle_dimension(*alg) == oracle::socle_dimension(model));
    CHECK(is_gorenstein(*alg) == (oracle::socle_dimension(model) == 1));
  }
  const AlgebraPtr g = support::algebra("gorenstein_pair.ring");
  CHECK(socle_dimension(*g) == 1);
  CHECK(is_gorenstein(*g));
}

TEST_CASE("truncation check agrees with the oracle") {
  for (const char* name : {"exnew_r1.ring", "exnew_r.ring", "ex1_r.ring", "counterex_r.ring"}) {
    const Presentation p = support::ring(name);
    std::vector<QuadricTerms> q;
    for (const auto& x : p.quadrics) q.push_back(x.terms);
    CHECK(verify_truncation(p, PrimeField()) ==
          oracle::cubic_part_vanishes(p.variables.size(), q, PrimeField::kDefaultPrime));
    CHECK(verify_truncation(p, PrimeField()));
  }
  std::mt19937_64 rng(3);
  int faithful = 0, unfaithful = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    Presentation p;
    for (std::size_t k = 0; k < n; ++k) p.variables.push_back("v" + std::to_string(k));
    std::vector<QuadricTerms> q;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (rng() % 4 != 0) q.push_back({{{i, j}, 1 + static_cast<std::int64_t>(rng() % 4)}});
    if (q.empty()) continue;
    for (auto& t : q) p.quadrics.push_back({t});
    const bool expected = oracle::cubic_part_vanishes(n, q, 5);
    CHECK(verify_truncation(p, PrimeField(5)) == expected);
    (expected ? faithful : unfaithful)++;
  }
  CHECK(faithful > 0);
  CHECK(unfaithful > 0);
}

TEST_CASE("element arithmetic") {
  const AlgebraPtr alg = support::algebra("exnew_r.ring");
  const Element x = alg->variable(2), y = alg->variable(5);
  CHECK(multiply(*alg, alg->one(), x) == x);
  CHECK(multiply(*alg, x, y) == multiply(*alg, y, x));
  const Element xy = multiply(*alg, x, y);
  CHECK(multiply(*alg, xy, x).is_zero());
  CHECK(add(*alg, x, scale(*alg, alg->field().neg(1), x)).is_zero());
  CHECK(x.is_linear());
}

TEST_CASE("multiplication map has the product as columns") {
  const AlgebraPtr alg = support::algebra("ex1_r.ring");
  const Vector l = support::form(alg, "x1 + x2 + y1 + y2 + y3 + x3 + x4 + x5 + y4 + y5");
  const Matrix m = alg->multiplication_map(l);
  CHECK(m.rows() == 9);
  CHECK(m.cols() == 10);
  for (std::size_t k = 0; k < 10; ++k) CHECK(m.column(k) == alg->product(l, alg->variable(k).v1));
}
