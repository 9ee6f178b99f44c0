#include "tacx/connected_sum.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tacx/error.hpp"

namespace tacx {

namespace {

QuadricTerms shifted(const QuadricTerms& q, std::size_t offset, std::int64_t sign = 1) {
  QuadricTerms out;
  for (const auto& [key, c] : q) out[{key.first + offset, key.second + offset}] += sign * c;
  return out;
}

bool all_zero(std::span<const Residue> v) {
  return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

std::string matrix_text(const Matrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? ", [" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += ", ";
      s += std::to_string(m.field().signed_value(m(r, c)));
    }
    s += "]";
  }
  return s + "]";
}

// Square matrices of constant size, or ConstructionError.
std::size_t constant_rank(const PeriodicComplex& c, const char* side) {
  const std::size_t b = c.maps().front().rows();
  for (const auto& m : c.maps())
    if (m.rows() != b || m.cols() != b)
      throw ConstructionError(std::string(side) + "-side maps must be square of one size");
  return b;
}

PeriodicComplex padded(const PeriodicComplex& c, std::size_t copies, std::size_t period) {
  std::vector<LinearMatrix> maps;
  for (std::size_t k = 0; k < period; ++k) {
    LinearMatrix m = c.map(static_cast<std::ptrdiff_t>(k));
    const LinearMatrix base = m;
    for (std::size_t j = 1; j < copies; ++j) m = m.direct_sum(base);
    maps.push_back(std::move(m));
  }
  return PeriodicComplex(std::move(maps));
}

}  // namespace

ConnectedSum build_connected_sum(const Presentation& p1, const Presentation& p2, PrimeField field) {
  if (!p1.distinguished || !p2.distinguished)
    throw ValidationError("both factors need a distinguished quadric");
  std::set<std::string> names(p1.variables.begin(), p1.variables.end());
  for (const auto& v : p2.variables)
    if (names.count(v)) throw ValidationError("variable name '" + v + "' occurs in both factors");
  validate_presentation(p1, field);
  validate_presentation(p2, field);
  if (!verify_truncation(p1, field)) throw ValidationError("first factor: truncation is not faithful (m^3 != 0)");
  if (!verify_truncation(p2, field)) throw ValidationError("second factor: truncation is not faithful (m^3 != 0)");

  const std::size_t n1 = p1.variables.size(), n2 = p2.variables.size();
  ConnectedSum cs;
  Presentation& r = cs.presentation;
  r.variables = p1.variables;
  r.variables.insert(r.variables.end(), p2.variables.begin(), p2.variables.end());
  if (p1.prime || p2.prime) r.prime = field.modulus();
  for (const auto& q : p1.other_quadrics()) r.quadrics.push_back(q);
  for (const auto& q : p2.other_quadrics()) r.quadrics.push_back({shifted(q.terms, n1)});
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) r.quadrics.push_back({QuadricTerms{{{i, n1 + j}, 1}}});
  QuadricTerms glue = p1.quadrics[*p1.distinguished].terms;
  for (const auto& [key, c] : shifted(p2.quadrics[*p2.distinguished].terms, n1, -1)) glue[key] += c;
  std::erase_if(glue, [](const auto& kv) { return kv.second == 0; });
  r.quadrics.push_back({glue});
  r.distinguished = r.quadrics.size() - 1;
  if (!verify_truncation(r, field)) throw ValidationError("connected sum: truncation is not faithful (m^3 != 0)");

  cs.ring = make_algebra(r, field);
  cs.left = make_lifted_ring(p1, field);
  cs.right = make_lifted_ring(p2, field);
  cs.a_variables.resize(n1);
  std::iota(cs.a_variables.begin(), cs.a_variables.end(), 0);
  cs.b_variables.resize(n2);
  std::iota(cs.b_variables.begin(), cs.b_variables.end(), n1);
  cs.delta = cs.ring->reduce_quadric(p1.quadrics[*p1.distinguished].terms);
  if (all_zero(cs.delta)) throw ValidationError("delta = 0: f lies in the span of the other quadrics of R");
  if (cs.ring->dim2() + 1 != cs.left.cover->dim2() + cs.right.cover->dim2())
    throw InvariantViolation("dim [R]_2 differs from dim [R_0]_2 + dim [S_0]_2 - 1");
  return cs;
}

std::pair<LinearMatrix, LinearMatrix> split_matrix(const ConnectedSum& cs, const LinearMatrix& d) {
  const std::size_t n1 = cs.a_variables.size(), n2 = cs.b_variables.size();
  if (d.dim1() != n1 + n2) throw ShapeError("matrix is not over the connected sum");
  LinearMatrix a(cs.left.quotient, d.rows(), d.cols());
  LinearMatrix b(cs.right.quotient, d.rows(), d.cols());
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c) {
      const auto e = d.entry(r, c);
      std::copy(e.begin(), e.begin() + n1, a.entry(r, c).begin());
      std::copy(e.begin() + n1, e.end(), b.entry(r, c).begin());
    }
  return {a, b};
}

LinearMatrix embed_left(const ConnectedSum& cs, const LinearMatrix& a) {
  if (a.dim1() != cs.a_variables.size()) throw ShapeError("matrix is not over the x-side factor");
  LinearMatrix out(cs.ring, a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) std::ranges::copy(a.entry(r, c), out.entry(r, c).begin());
  return out;
}

LinearMatrix embed_right(const ConnectedSum& cs, const LinearMatrix& b) {
  if (b.dim1() != cs.b_variables.size()) throw ShapeError("matrix is not over the y-side factor");
  const std::size_t n1 = cs.a_variables.size();
  LinearMatrix out(cs.ring, b.rows(), b.cols());
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) std::ranges::copy(b.entry(r, c), out.entry(r, c).begin() + n1);
  return out;
}

Assembly assemble(const ConnectedSum& cs, const PeriodicComplex& a_side, const PeriodicComplex& b_side,
                  bool auto_sign) {
  const auto& F = cs.ring->field();
  const std::size_t base_period = std::lcm(a_side.period(), b_side.period());
  const std::size_t ra = constant_rank(a_side, "A"), rb = constant_rank(b_side, "B");
  Assembly out{PeriodicComplex({LinearMatrix(cs.ring, 0, 0)}), {}, 1, 1};
  if (ra == 0 && rb == 0) {
    out.complex = PeriodicComplex(std::vector<LinearMatrix>(base_period, LinearMatrix(cs.ring, 0, 0)));
    out.signs.assign(base_period, 1);
    return out;
  }
  if (ra == 0 || rb == 0) throw ConstructionError("cannot pad a zero-rank side to a nonzero rank");
  const std::size_t rank = std::lcm(ra, rb);
  out.copies_a = rank / ra;
  out.copies_b = rank / rb;
  const Residue minus = F.neg(1);

  // Returns an empty string when the f- and g-coefficients cancel at every position.
  auto attempt = [&](std::size_t period, bool alternate, std::vector<LinearMatrix>& a_maps,
                     std::vector<LinearMatrix>& b_signed, std::vector<int>& signs) -> std::string {
    const PeriodicComplex a = padded(a_side, out.copies_a, period);
    const PeriodicComplex b = padded(b_side, out.copies_b, period);
    a_maps = a.maps();
    b_signed.clear();
    signs.clear();
    for (std::size_t k = 0; k < period; ++k) {
      const int sign = alternate && k % 2 == 1 ? -1 : 1;
      signs.push_back(sign);
      b_signed.push_back(sign < 0 ? b.maps()[k].scaled(minus) : b.maps()[k]);
    }
    for (std::size_t k = 0; k < period; ++k) {
      const std::size_t prev = (k + period - 1) % period;
      const auto m = product_f_coefficient(a_maps[prev].rebind(cs.left.cover), a_maps[k].rebind(cs.left.cover),
                                           cs.left.f);
      const auto n = product_f_coefficient(b_signed[prev].rebind(cs.right.cover), b_signed[k].rebind(cs.right.cover),
                                           cs.right.f);
      const std::string where = "position " + std::to_string(k);
      if (!m) return where + ": A-side composite is not a multiple of f";
      if (!n) return where + ": B-side composite is not a multiple of g";
      if (!(*m + *n).is_zero())
        return where + ": composite coefficients do not cancel (f-coefficient " + matrix_text(*m) +
               ", g-coefficient " + matrix_text(*n) + ")";
    }
    return {};
  };

  std::vector<LinearMatrix> a_maps, b_signed;
  std::string failure = attempt(base_period, false, a_maps, b_signed, out.signs);
  if (!failure.empty() && auto_sign) {
    // the alternating sign needs an even period
    const std::size_t period = base_period % 2 == 1 ? 2 * base_period : base_period;
    failure = attempt(period, true, a_maps, b_signed, out.signs);
  }
  if (!failure.empty()) throw ConstructionError(failure);

  std::vector<LinearMatrix> maps;
  for (std::size_t k = 0; k < a_maps.size(); ++k) maps.push_back(embed_left(cs, a_maps[k]) + embed_right(cs, b_signed[k]));
  out.complex = PeriodicComplex(std::move(maps));
  if (!is_complex(out.complex)) throw InvariantViolation("assembled sequence is not a complex");
  return out;
}

GorensteinCrosscheck gorenstein_crosscheck(const ConnectedSum& cs) {
  GorensteinCrosscheck g;
  g.gor_r = is_gorenstein(*cs.ring);
  g.gor_r0 = is_gorenstein(*cs.left.cover);
  g.gor_s0 = is_gorenstein(*cs.right.cover);
  g.gor_r1 = is_gorenstein(*cs.left.quotient);
  g.gor_s1 = is_gorenstein(*cs.right.quotient);
  g.consistent = g.gor_r == (g.gor_r0 && g.gor_s0);
  if (!g.consistent) throw InvariantViolation("R is Gorenstein iff R_0 and S_0 are; the computed flags disagree");
  return g;
}

bool exact_everywhere(const PeriodicComplex& c) {
  if (!is_complex(c)) return false;
  for (std::size_t k = 0; k < c.period(); ++k)
    if (!exactness_at(c, k)) return false;
  return true;
}

MainResultCheck mainresult_crosscheck(const ConnectedSum& cs, const PeriodicComplex& a_side,
                                      const PeriodicComplex& b_side, bool auto_sign) {
  MainResultCheck r;
  r.lifting_condition_a = lifting_condition_check(a_side, cs.left);
  r.lifting_condition_b = lifting_condition_check(b_side, cs.right);
  r.hypothesis = r.lifting_condition_a && r.lifting_condition_b;
  r.complex_a = is_complex(a_side);
  r.complex_b = is_complex(b_side);
  r.exact_a = exact_everywhere(a_side);
  r.exact_b = exact_everywhere(b_side);
  const Assembly assembled = assemble(cs, a_side, b_side, auto_sign);
  r.exact_assembled = exact_everywhere(assembled.complex);
  r.totally_acyclic_assembled = r.exact_assembled && is_totally_acyclic(assembled.complex);
  r.biconditional = !r.hypothesis || r.exact_assembled == (r.exact_a && r.exact_b);
  r.necessity = !r.totally_acyclic_assembled || is_gorenstein(*cs.ring) || r.hypothesis;
  return r;
}

}  // namespace tacx
