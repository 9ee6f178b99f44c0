#include "tacx/algebra.hpp"

#include <algorithm>

#include "tacx/error.hpp"

namespace tacx {

bool Element::is_linear() const {
  return c0 == 0 && std::all_of(v2.begin(), v2.end(), [](Residue x) { return x == 0; });
}

bool Element::is_zero() const {
  return c0 == 0 && std::all_of(v1.begin(), v1.end(), [](Residue x) { return x == 0; }) &&
         std::all_of(v2.begin(), v2.end(), [](Residue x) { return x == 0; });
}

ShortAlgebra ShortAlgebra::build(const Presentation& p, PrimeField field) {
  validate_presentation(p, field);
  ShortAlgebra a(field, p);
  const std::size_t n = p.variables.size();
  const std::size_t cols = monomial_count(n);
  a.n_ = n;

  Matrix q(field, p.quadrics.size(), cols);
  for (std::size_t r = 0; r < p.quadrics.size(); ++r) {
    const Vector v = quadric_vector(p.quadrics[r].terms, n, field);
    for (std::size_t c = 0; c < cols; ++c) q(r, c) = v[c];
  }
  const auto [reduced, pivots] = rref(q);

  std::vector<std::pair<std::size_t, std::size_t>> monomials;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) monomials.emplace_back(i, j);

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> basis_col;  // monomial column -> basis position
  std::vector<std::size_t> position(cols, 0);
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) {
      position[c] = a.basis_.size();
      a.basis_.push_back(monomials[c]);
      basis_col.push_back(c);
    }
  a.d_ = a.basis_.size();

  // Pivot row r reads: m_pivot + sum_{free c} reduced(r, c) m_c = 0.
  std::vector<Vector> coords(cols, Vector(a.d_, 0));
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) coords[c][position[c]] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t t = 0; t < a.d_; ++t)
      coords[pivots[r]][t] = field.neg(reduced(r, basis_col[t]));

  a.table_.assign(n * n * a.d_, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& v = coords[monomial_index(i, j, n)];
      std::copy(v.begin(), v.end(), a.table_.begin() + (i * n + j) * a.d_);
    }
  return a;
}

AlgebraPtr make_algebra(const Presentation& p, PrimeField field) {
  return std::make_shared<const ShortAlgebra>(ShortAlgebra::build(p, field));
}

Vector ShortAlgebra::reduce_quadric(const QuadricTerms& q) const {
  Vector out(d_, 0);
  for (const auto& [key, c] : q) {
    if (key.second >= n_) throw ValidationError("quadric references an unknown variable");
    const Residue coef = field_.reduce(c);
    const auto r = reduce(key.first, key.second);
    for (std::size_t t = 0; t < d_; ++t) out[t] = field_.add(out[t], field_.mul(coef, r[t]));
  }
  return out;
}

Vector ShortAlgebra::linear_vector(const LinearTerms& t) const {
  Vector out(n_, 0);
  for (const auto& [k, c] : t) {
    if (k >= n_) throw ValidationError("linear form references an unknown variable");
    out[k] = field_.add(out[k], field_.reduce(c));
  }
  return out;
}

Vector ShortAlgebra::product(std::span<const Residue> a, std::span<const Residue> b) const {
  Vector out(d_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!b[j]) continue;
      const Residue c = field_.mul(a[i], b[j]);
      const auto r = reduce(i, j);
      for (std::size_t t = 0; t < d_; ++t)
        if (r[t]) out[t] = field_.add(out[t], field_.mul(c, r[t]));
    }
  }
  return out;
}

Matrix ShortAlgebra::multiplication_map(std::span<const Residue> a) const {
  Matrix m(field_, d_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!a[i]) continue;
    for (std::size_t k = 0; k < n_; ++k) {
      const auto r = reduce(i, k);
      for (std::size_t t = 0; t < d_; ++t)
        if (r[t]) m(t, k) = field_.add(m(t, k), field_.mul(a[i], r[t]));
    }
  }
  return m;
}

Element ShortAlgebra::zero() const { return {0, Vector(n_, 0), Vector(d_, 0)}; }

Element ShortAlgebra::one() const { return {1, Vector(n_, 0), Vector(d_, 0)}; }

Element ShortAlgebra::variable(std::size_t k) const {
  Element e = zero();
  e.v1.at(k) = 1;
  return e;
}

Element ShortAlgebra::linear(Vector v1) const {
  if (v1.size() != n_) throw ShapeError("linear element has wrong length");
  return {0, std::move(v1), Vector(d_, 0)};
}

Element ShortAlgebra::quadratic(Vector v2) const {
  if (v2.size() != d_) throw ShapeError("quadratic element has wrong length");
  return {0, Vector(n_, 0), std::move(v2)};
}

Element multiply(const ShortAlgebra& a, const Element& x, const Element& y) {
  const auto& F = a.field();
  Element out = a.zero();
  out.c0 = F.mul(x.c0, y.c0);
  for (std::size_t k = 0; k < a.dim1(); ++k)
    out.v1[k] = F.add(F.mul(x.c0, y.v1[k]), F.mul(y.c0, x.v1[k]));
  const Vector bil = a.product(x.v1, y.v1);
  for (std::size_t t = 0; t < a.dim2(); ++t)
    out.v2[t] = F.add(F.add(F.mul(x.c0, y.v2[t]), F.mul(y.c0, x.v2[t])), bil[t]);
  return out;
}

Element add(const ShortAlgebra& a, const Element& x, const Element& y) {
  const auto& F = a.field();
  Element out = x;
  out.c0 = F.add(x.c0, y.c0);
  for (std::size_t k = 0; k < a.dim1(); ++k) out.v1[k] = F.add(x.v1[k], y.v1[k]);
  for (std::size_t t = 0; t < a.dim2(); ++t) out.v2[t] = F.add(x.v2[t], y.v2[t]);
  return out;
}

Element scale(const ShortAlgebra& a, Residue s, const Element& x) {
  const auto& F = a.field();
  Element out = x;
  out.c0 = F.mul(s, x.c0);
  for (auto& v : out.v1) v = F.mul(s, v);
  for (auto& v : out.v2) v = F.mul(s, v);
  return out;
}

bool verify_truncation(const Presentation& p, const PrimeField& field) {
  const std::size_t n = p.variables.size();
  // cubic monomials x_i x_j x_l, i <= j <= l, indexed through a dense cube
  std::vector<std::size_t> index(n * n * n, 0);
  std::size_t cubics = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t l = j; l < n; ++l) index[(i * n + j) * n + l] = cubics++;
  if (cubics == 0) return true;
  auto cubic_index = [&](std::size_t i, std::size_t j, std::size_t l) {
    std::size_t s[3] = {i, j, l};
    std::sort(s, s + 3);
    return index[(s[0] * n + s[1]) * n + s[2]];
  };
  Matrix m(field, n * p.quadrics.size(), cubics);
  std::size_t row = 0;
  for (const auto& q : p.quadrics)
    for (std::size_t k = 0; k < n; ++k, ++row)
      for (const auto& [key, c] : q.terms) {
        auto& slot = m(row, cubic_index(key.first, key.second, k));
        slot = field.add(slot, field.reduce(c));
      }
  return rank(m) == cubics;
}

std::size_t socle_dimension(const ShortAlgebra& a) {
  const std::size_t n = a.dim1();
  const std::size_t d = a.dim2();
  if (n == 0) return d == 0 ? 1 : d;
  // v -> (v·x_1, ..., v·x_n), stacked
  Matrix stacked(a.field(), n * d, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = a.reduce(i, k);
      for (std::size_t t = 0; t < d; ++t) stacked(k * d + t, i) = r[t];
    }
  return d + (n - rank(stacked));
}

bool is_gorenstein(const ShortAlgebra& a) { return socle_dimension(a) == 1; }

YoshinoReport yoshino_check(const ShortAlgebra& a) {
  YoshinoReport r;
  r.dim1 = a.dim1();
  r.dim2 = a.dim2();
  r.quadric_defined = true;
  r.dim_condition = a.dim1() >= 1 && a.dim2() + 1 == a.dim1();
  return r;
}

Presentation without_distinguished(const Presentation& p) {
  Presentation out = p;
  out.quadrics = p.other_quadrics();
  out.distinguished.reset();
  return out;
}

LiftedRing make_lifted_ring(const Presentation& p, PrimeField field) {
  if (!p.distinguished) throw ValidationError("presentation has no distinguished quadric");
  LiftedRing lr;
  lr.quotient = make_algebra(p, field);
  lr.cover = make_algebra(without_distinguished(p), field);
  lr.f = lr.cover->reduce_quadric(p.quadrics[*p.distinguished].terms);
  if (std::all_of(lr.f.begin(), lr.f.end(), [](Residue x) { return x == 0; }))
    throw ValidationError("distinguished quadric vanishes in R_0");
  return lr;
}

}  // namespace tacx
