#include "doctest.h"
#include "support.hpp"
#include "tacx/error.hpp"

using namespace tacx;
using support::fixture;

TEST_CASE("exnew_r1 parses to 3 variables and 4 quadrics") {
  const Presentation p = support::ring("exnew_r1.ring");
  CHECK(p.variables == std::vector<std::string>{"x1", "y1", "z1"});
  REQUIRE(p.quadrics.size() == 4);
  REQUIRE(p.distinguished.has_value());
  CHECK(p.quadrics[*p.distinguished].terms == QuadricTerms{{{2, 2}, 1}});
  CHECK(p.other_quadrics().size() == 3);
  CHECK_FALSE(p.prime.has_value());
}

TEST_CASE("expression grammar") {
  const auto resolve = variable_resolver({"a", "b"});
  const Polynomial q = parse_expression("3*a*b - b^2 + a*a", resolve);
  CHECK(q.quadratic == QuadricTerms{{{0, 1}, 3}, {{1, 1}, -1}, {{0, 0}, 1}});
  const Polynomial l = parse_expression("a - 2*b", resolve);
  CHECK(l.linear == LinearTerms{{0, 1}, {1, -2}});
  CHECK_THROWS_AS(parse_expression("a*b*a", resolve), ParseError);
  CHECK_THROWS_AS(parse_expression("a^3", resolve), ParseError);
  CHECK_THROWS_AS(parse_expression("a + c", resolve), ParseError);
  CHECK_THROWS_AS(parse_expression("a +", resolve), ParseError);
}

TEST_CASE("ring file errors carry positions") {
  CHECK_THROWS_AS(parse_ring_file("[vars]\nx, x\n"), ParseError);
  CHECK_THROWS_AS(parse_ring_file("[vars]\nx\n[quadrics]\nx\n"), ParseError);
  CHECK_THROWS_AS(parse_ring_file("[vars]\nx\n[quadrics]\nx^2\n[distinguished]\n2\n"), ParseError);
  CHECK_THROWS_AS(parse_ring_file("[field]\np = 2\n[vars]\nx\n"), ConfigError);
  try {
    parse_ring_file("[vars]\nx, y\n[quadrics]\nx*q\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("distinguished quadric by expression or index") {
  const Presentation a = parse_ring_file("[vars]\nx, y\n[quadrics]\nx^2\ny^2\n[distinguished]\n2\n");
  CHECK(a.distinguished == 1u);
  const Presentation b = parse_ring_file("[vars]\nx, y\n[quadrics]\nx^2\n[distinguished]\nx*y\n");
  CHECK(b.quadrics.size() == 2);
  CHECK(b.distinguished == 1u);
}

TEST_CASE("validation is field dependent") {
  const Presentation p = parse_ring_file("[vars]\nx, y\n[quadrics]\n3*x^2\nx*y\n[distinguished]\nx*y\n");
  CHECK_NOTHROW(validate_presentation(p, PrimeField(5)));
  CHECK_THROWS_AS(validate_presentation(p, PrimeField(3)), ValidationError);
  const Presentation q = parse_ring_file("[vars]\nx, y\n[quadrics]\nx^2\nx^2 + x*y\n[distinguished]\nx*y\n");
  CHECK_THROWS_AS(validate_presentation(q, PrimeField()), ValidationError);
}

TEST_CASE("ring text round-trips") {
  for (const char* name : {"exnew_r.ring", "ex1_r.ring", "counterex_r.ring", "gorenstein_pair.ring"}) {
    const Presentation p = support::ring(name);
    CHECK(parse_ring_file(to_ring_text(p)) == p);
  }
}

TEST_CASE("graph files") {
  const BipartiteGraph g = parse_graph_file(read_text_file(fixture("path6.graph")));
  CHECK(g.x_count == 3);
  CHECK(g.y_count == 3);
  CHECK(g.edges.size() == 6);
  CHECK(g.edges.contains({3, 1}));
  CHECK(parse_graph_file(to_graph_text(g)) == g);
  CHECK_THROWS_AS(parse_graph_file("2 2\nx1 y3\n"), ParseError);
  CHECK_THROWS_AS(parse_graph_file("2 2\nx1 y1\nx1 y1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph_file(""), ParseError);
}

TEST_CASE("complex files") {
  const ComplexFile c = parse_complex_file(read_text_file(fixture("finalex_r1.cx")));
  CHECK(c.ring == "ex1_r1.ring");
  CHECK(c.period == 2);
  REQUIRE(c.matrices.size() == 2);
  CHECK(c.matrices[0] == std::vector<std::vector<std::string>>{{"l1", "x1"}, {"-y1", "l1p"}});
  CHECK(parse_complex_file(to_complex_text(c)) == c);
  CHECK_THROWS_AS(parse_complex_file("[ring]\nr.ring\n[period]\n2\n[matrix 0]\n[[x]]\n"), ParseError);
  CHECK_THROWS_AS(parse_complex_file("[ring]\nr.ring\n[period]\n2\n[matrix 0]\n[[x, y]]\n[matrix 1]\n[[x, y]]\n"),
                  ShapeError);
}

TEST_CASE("renaming") {
  const Presentation p = support::ring("exnew_r1.ring");
  const Presentation r = rename_variables(p, {{"x1", "u"}, {"y1", "v"}, {"z1", "w"}});
  CHECK(r.variables == std::vector<std::string>{"u", "v", "w"});
  CHECK(r.quadrics == p.quadrics);
  CHECK_THROWS_AS(rename_variables(p, {{"x1", "u"}, {"y1", "u"}, {"z1", "w"}}), ValidationError);
  CHECK(format_quadric(r.variables, r.quadrics[3].terms) == "u*v");
}
