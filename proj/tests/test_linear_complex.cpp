#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tacx/error.hpp"

using namespace tacx;
using support::fixture;

namespace {

const std::vector<std::pair<std::string, std::string>> kR1Aliases = {
    {"l1", "x1 + x2 + y1 + y2 + y3"},
    {"l1p", "x1 + x2 - y1 - y2 - y3"}};

LiftedRing lifted(const char* name) { return make_lifted_ring(support::ring(name), PrimeField()); }

PeriodicComplex ezd_pair(const AlgebraPtr& alg, const char* a, const char* b) {
  return PeriodicComplex({support::linear(alg, a), support::linear(alg, b)});
}

}  // namespace

TEST_CASE("finalex X_1 parses with aliases") {
  const LiftedRing lr = lifted("ex1_r1.ring");
  const LinearMatrix x = parse_linear_matrix("[[l1, x1],[-y1, l1p]]", lr.quotient, kR1Aliases);
  CHECK(x.rows() == 2);
  CHECK(x.cols() == 2);
  CHECK(Vector(x.entry(0, 0).begin(), x.entry(0, 0).end()) == Vector{1, 1, 1, 1, 1});
  const Residue m1 = lr.quotient->field().neg(1);
  CHECK(Vector(x.entry(1, 0).begin(), x.entry(1, 0).end()) == Vector{0, 0, m1, 0, 0});
  CHECK(Vector(x.entry(1, 1).begin(), x.entry(1, 1).end()) == Vector{1, 1, m1, m1, m1});
  CHECK_THROWS_AS(parse_linear_matrix("[[x1*x2]]", lr.quotient), ParseError);
  CHECK_THROWS_AS(parse_linear_matrix("[[x1 + 1]]", lr.quotient), ParseError);
  CHECK_THROWS_AS(parse_linear_matrix("[[q]]", lr.quotient), ParseError);
}

TEST_CASE("finalex lifts compose to f I_2 on both sides") {
  const LiftedRing lr = lifted("ex1_r1.ring");
  const auto loaded = load_complex(fixture("finalex_r1.cx"));
  const LinearMatrix x = loaded.complex.map(0).rebind(lr.cover);
  const LinearMatrix w = loaded.complex.map(1).rebind(lr.cover);
  const QuadraticMatrix xw = compose(x, w), wx = compose(w, x);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      const Vector expected = r == c ? lr.f : Vector(lr.cover->dim2(), 0);
      CHECK(Vector(xw.entry(r, c).begin(), xw.entry(r, c).end()) == expected);
      CHECK(Vector(wx.entry(r, c).begin(), wx.entry(r, c).end()) == expected);
    }
  const auto m = product_f_coefficient(x, w, lr.f);
  REQUIRE(m);
  CHECK(m->is_identity());

  const LiftedRing ls = lifted("ex1_s1.ring");
  const auto s = load_complex(fixture("finalex_s1.cx"));
  const auto n = product_f_coefficient(s.complex.map(0).rebind(ls.cover), s.complex.map(1).rebind(ls.cover), ls.f);
  REQUIRE(n);
  CHECK(n->is_identity());
}

TEST_CASE("l1 * l1' lifts to zero in R_0") {
  const LiftedRing lr = lifted("ex1_r1.ring");
  const LinearMatrix l = support::linear(lr.cover, "x1 + x2 + y1 + y2 + y3");
  const LinearMatrix lp = support::linear(lr.cover, "x1 + x2 - y1 - y2 - y3");
  CHECK(compose(l, lp).is_zero());
  const auto m = product_f_coefficient(l, lp, lr.f);
  REQUIRE(m);
  CHECK(m->is_zero());
  CHECK(m->rows() == 1);
}

TEST_CASE("complexes and shapes") {
  const auto ex1 = load_complex(fixture("ex1_assembled.cx"));
  CHECK(is_complex(ex1.complex));
  const AlgebraPtr exnew = support::algebra("exnew_r.ring");
  CHECK(is_complex(ezd_pair(exnew, "z1 + z2", "z1 - z2")));
  CHECK_FALSE(is_complex(ezd_pair(exnew, "z1", "z1")));
  CHECK_THROWS_AS(PeriodicComplex({support::linear(exnew, "[[z1, z2]]"), support::linear(exnew, "[[z1, z2]]")}),
                  ShapeError);
  CHECK_THROWS_AS(exactness_at(ezd_pair(exnew, "z1", "z1"), 0), NotAComplex);
}

TEST_CASE("degree maps have the documented shape") {
  const AlgebraPtr alg = support::algebra("ex1_r.ring");
  const LinearMatrix l = support::linear(alg, "x1 + x2 + y1 + y2 + y3 + x3 + x4 + x5 + y4 + y5");
  const Matrix m = degree_map(l);
  CHECK(m.rows() == 9);
  CHECK(m.cols() == 10);
  CHECK(m == alg->multiplication_map(l.entry(0, 0)));
  // ann(l1 + l2) in degree 1 has dimension at least 2: not principal
  CHECK(m.cols() - rank(m) >= 2);
  const Matrix c = column_map(support::linear(alg, "[[x1, x2], [y1, y2], [x3, y5]]"));
  CHECK(c.rows() == 30);
  CHECK(c.cols() == 2);
}

TEST_CASE("exactness of the fixture complexes") {
  const AlgebraPtr exnew = support::algebra("exnew_r.ring");
  const PeriodicComplex z = ezd_pair(exnew, "z1 + z2", "z1 - z2");
  CHECK(exactness_at(z, 0));
  CHECK(exactness_at(z, 1));
  CHECK(is_totally_acyclic(z));

  const auto ex1 = load_complex(fixture("ex1_assembled.cx"));
  for (std::size_t k = 0; k < 2; ++k) {
    const ExactnessDetail e = exactness_detail(ex1.complex.map(k + 1), ex1.complex.map(k));
    CHECK_FALSE(e.exact());
    CHECK(e.kernel_dim == 2);
    CHECK(e.image_dim == 1);
    CHECK_FALSE(exactness_at(ex1.complex, k));
  }
  CHECK_FALSE(is_totally_acyclic(ex1.complex));

  const auto l1 = load_complex(fixture("ex1_l1.cx"));
  CHECK(is_totally_acyclic(l1.complex));
  const auto fin = load_complex(fixture("finalex.cx"));
  CHECK(is_totally_acyclic(fin.complex));
}

TEST_CASE("exactness agrees with the full-model oracle on fixtures") {
  for (const char* name : {"ex1_assembled.cx", "ex1_l1.cx", "ex1_l2.cx", "finalex.cx", "finalex_r1.cx",
                           "finalex_s1.cx", "exnew_z1.cx", "exnew_z2.cx"}) {
    CAPTURE(name);
    const auto loaded = load_complex(fixture(name));
    const auto model = oracle::build(loaded.presentation, PrimeField::kDefaultPrime);
    const PeriodicComplex d = dual(loaded.complex);
    for (std::size_t k = 0; k < loaded.complex.period(); ++k) {
      CHECK(exactness_at(loaded.complex, k) == support::oracle_exact_at(model, loaded.complex, k));
      CHECK(exactness_at(d, k) == support::oracle_exact_at(model, d, k));
    }
  }
}

TEST_CASE("dual is an involution and reverses arrows") {
  const auto fin = load_complex(fixture("finalex.cx"));
  const PeriodicComplex d = dual(fin.complex);
  CHECK(d.map(0) == fin.complex.map(1).transpose());
  CHECK(d.map(1) == fin.complex.map(0).transpose());
  const PeriodicComplex dd = dual(d);
  for (std::size_t k = 0; k < 2; ++k) CHECK(dd.map(k) == fin.complex.map(k));
  CHECK(is_complex(d));
}

TEST_CASE("lifting condition") {
  const LiftedRing exnew = lifted("exnew_r1.ring");
  const PeriodicComplex z = ezd_pair(exnew.quotient, "z1", "z1");
  CHECK(lifting_condition_check(z, exnew));
  const LiftedRing ex1 = lifted("ex1_r1.ring");
  const auto l1 = load_complex(fixture("ex1_l1.cx"));
  const LiftingReport rep = lifting_condition(l1.complex, ex1);
  CHECK_FALSE(rep.holds);
  CHECK(rep.per_map == std::vector<bool>{false, false});
  const auto fin = load_complex(fixture("finalex_r1.cx"));
  CHECK(lifting_condition_check(fin.complex, ex1));
}

TEST_CASE("normalize fails where the lifting condition fails") {
  const LiftedRing ex1 = lifted("ex1_r1.ring");
  const auto l1 = load_complex(fixture("ex1_l1.cx"));
  try {
    normalize(l1.complex, ex1);
    FAIL("expected a construction error");
  } catch (const ConstructionError& e) {
    CHECK(std::string(e.what()).find("U_0 is not invertible") != std::string::npos);
  }
}

TEST_CASE("normalize undoes a constant change of basis") {
  const LiftedRing ex1 = lifted("ex1_r1.ring");
  const auto fin = load_complex(fixture("finalex_r1.cx"));
  const PrimeField& F = ex1.cover->field();
  const Matrix p = Matrix::from_rows(F, {{1, 2}, {3, 5}});
  const Matrix q = Matrix::from_rows(F, {{2, 7}, {1, 1}});
  const Matrix s = invert(p)->scaled(3);
  // (P X Q, 3 Q^-1 W P^-1): composites 3 f I up to conjugation
  const PeriodicComplex twisted({fin.complex.map(0).left_multiply(p).right_multiply(q),
                                 fin.complex.map(1).left_multiply(*invert(q)).right_multiply(s)});
  CHECK(is_complex(twisted));
  const NormalizedComplex n = normalize(twisted, ex1, 6);
  REQUIRE(n.window.length() == 6);
  CHECK(n.coefficients.size() == 5);
  for (std::size_t i = 0; i + 1 < 6; ++i) {
    const auto m = product_f_coefficient(n.window.maps()[i].rebind(ex1.cover),
                                         n.window.maps()[i + 1].rebind(ex1.cover), ex1.f);
    REQUIRE(m);
    CHECK(m->is_identity());
  }
  CHECK(exactness_at(n.window, 1) == exactness_at(fin.complex, 0));

  const NormalizedComplex plain = normalize(fin.complex, ex1, 4);
  REQUIRE(plain.periodic);
  CHECK(plain.periodic->map(0) == fin.complex.map(0));
  CHECK_THROWS_AS(normalize(fin.complex, ex1, 0), ConfigError);
}

TEST_CASE("complex text round-trips through the writer") {
  const auto fin = load_complex(fixture("finalex.cx"));
  const ComplexFile file = to_complex_file(fin.complex, "ex1_r.ring");
  const PeriodicComplex back = resolve_complex(parse_complex_file(to_complex_text(file)), fin.algebra);
  for (std::size_t k = 0; k < 2; ++k) CHECK(back.map(k) == fin.complex.map(k));
}

TEST_CASE("load_complex honours a prime override") {
  const auto a = load_complex(fixture("exnew_z1.cx"), 5u);
  CHECK(a.algebra->field().modulus() == 5);
  CHECK_THROWS_AS(load_complex(fixture("exnew_z1.cx"), 4u), ConfigError);
}
