#include "tacx/doubling.hpp"

#include <algorithm>

#include "tacx/error.hpp"

namespace tacx {

namespace {

bool all_zero(std::span<const Residue> v) {
  return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

std::string matrix_text(const Matrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? ", [" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? ", " : "") + std::to_string(m.field().signed_value(m(r, c)));
    s += "]";
  }
  return s + "]";
}

// diag(y, ..., y, 0, ..., 0) with v copies of y, repeated `copies` times.
LinearMatrix pattern(const AlgebraPtr& alg, const Vector& y, std::size_t b, std::size_t v, std::size_t copies) {
  LinearMatrix m(alg, b * copies, b * copies);
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < v; ++i) std::ranges::copy(y, m.entry(c * b + i, c * b + i).begin());
  return m;
}

// Composite is diagonal and its b-periodic diagonal blocks agree.
bool block_diagonal(const QuadraticMatrix& q, std::size_t b) {
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c) {
      if (r != c) {
        if (!all_zero(q.entry(r, c))) return false;
      } else if (r >= b && !std::ranges::equal(q.entry(r, c), q.entry(r % b, r % b))) {
        return false;
      }
    }
  return true;
}

}  // namespace

bool decomposes_f(const SocleDecomposition& dec, const LiftedRing& ring) {
  const auto& alg = *ring.cover;
  Vector sum(alg.dim2(), 0);
  for (const auto& [y, z] : dec.pairs) {
    const Vector p = alg.product(y, z);
    for (std::size_t t = 0; t < sum.size(); ++t) sum[t] = alg.field().add(sum[t], p[t]);
  }
  return sum == ring.f;
}

SocleDecomposition monomial_decomposition(const Presentation& p, const LiftedRing& ring) {
  if (!p.distinguished) throw ValidationError("presentation has no distinguished quadric");
  const auto& alg = *ring.cover;
  SocleDecomposition dec;
  for (const auto& [key, c] : p.quadrics[*p.distinguished].terms) {
    Vector y(alg.dim1(), 0), z(alg.dim1(), 0);
    y[key.first] = alg.field().reduce(c);
    z[key.second] = 1;
    dec.pairs.emplace_back(std::move(y), std::move(z));
  }
  return dec;
}

SocleDecomposition parse_decomposition(std::string_view text, const AlgebraPtr& cover) {
  SocleDecomposition dec;
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find('(', pos);
    if (open == std::string_view::npos) break;
    const auto close = text.find(')', open);
    if (close == std::string_view::npos) throw ParseError("unbalanced parenthesis in decomposition");
    const auto inner = text.substr(open + 1, close - open - 1);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw ParseError("decomposition pair needs two forms: '(y, z)'");
    dec.pairs.emplace_back(parse_linear_form(inner.substr(0, comma), cover),
                           parse_linear_form(inner.substr(comma + 1), cover));
    pos = close + 1;
  }
  if (dec.pairs.empty()) throw ParseError("empty decomposition");
  return dec;
}

NormalForm normal_form(const LinearMatrix& x, const LinearMatrix& w, const LiftedRing& ring) {
  const auto& F = ring.cover->field();
  const LinearMatrix xl = x.rebind(ring.cover), wl = w.rebind(ring.cover);
  if (xl.rows() != xl.cols() || wl.rows() != wl.cols() || xl.rows() != wl.rows())
    throw ShapeError("normal form needs square matrices of one size");
  const auto m = product_f_coefficient(xl, wl, ring.f);
  const auto n = product_f_coefficient(wl, xl, ring.f);
  if (!m || !n) throw ConstructionError("composite X~W~ or W~X~ is not a multiple of f");
  if (!(*m == *n)) throw ConstructionError("X~W~ != W~X~: coefficients " + matrix_text(*m) + " and " + matrix_text(*n));
  const std::size_t b = xl.rows();
  if (m->is_zero()) return {xl, wl, b, 0};

  // lambda from one nonzero entry of M, then M^2 = lambda M must hold
  const Matrix m2 = *m * *m;
  Residue lambda = 0;
  for (std::size_t i = 0; i < b * b && !lambda; ++i)
    if (m->data()[i]) lambda = F.mul(m2.data()[i], F.inv(m->data()[i]));
  if (!lambda || !(m2 == m->scaled(lambda)))
    throw ConstructionError("normal form unsupported: coefficient " + matrix_text(*m) +
                            " is not a multiple of an idempotent");
  const Matrix e = m->scaled(F.inv(lambda));
  const Matrix kernel = kernel_basis(e);
  Matrix shifted = e;
  for (std::size_t i = 0; i < b; ++i) shifted(i, i) = F.sub(shifted(i, i), 1);
  const Matrix image = kernel_basis(shifted);
  if (kernel.cols() + image.cols() != b) throw InvariantViolation("idempotent eigenspaces do not span");
  Matrix s(F, b, b);
  for (std::size_t r = 0; r < b; ++r) {
    for (std::size_t c = 0; c < kernel.cols(); ++c) s(r, c) = kernel(r, c);
    for (std::size_t c = 0; c < image.cols(); ++c) s(r, kernel.cols() + c) = image(r, c);
  }
  const Matrix s_inv = *invert(s);
  NormalForm out{xl.left_multiply(s_inv).right_multiply(s),
                 wl.left_multiply(s_inv).right_multiply(s).scaled(F.inv(lambda)), kernel.cols(), lambda};
  return out;
}

DoubledPair build_doubled(const LinearMatrix& x, const LinearMatrix& w, const SocleDecomposition& dec,
                          Residue alpha, const LiftedRing& ring) {
  const auto& F = ring.cover->field();
  alpha = F.reduce(alpha);
  const NormalForm nf = normal_form(x, w, ring);
  if (nf.v == 0) return {nf.x, nf.w, alpha, 0, 0};
  if (dec.pairs.empty()) throw ValidationError("empty decomposition of f");
  if (!decomposes_f(dec, ring)) throw ValidationError("the decomposition does not sum to f in R_0");

  const std::size_t b = nf.x.rows();
  const Residue minus_alpha = F.neg(alpha);
  LinearMatrix a = nf.x, bb = nf.w;
  std::size_t copies = 1;
  for (std::size_t j = 0; j < dec.pairs.size(); ++j) {
    const LinearMatrix y = pattern(ring.cover, dec.pairs[j].first, b, nf.v, copies);
    const LinearMatrix z = pattern(ring.cover, dec.pairs[j].second, b, nf.v, copies);
    LinearMatrix next_a = LinearMatrix::block2(a, y.scaled(alpha), z.scaled(minus_alpha), bb);
    LinearMatrix next_b = LinearMatrix::block2(bb, y.scaled(minus_alpha), z.scaled(alpha), a);
    a = std::move(next_a);
    bb = std::move(next_b);
    copies *= 2;
    if (!block_diagonal(compose(a, bb), b) || !block_diagonal(compose(bb, a), b))
      throw ConstructionError("level " + std::to_string(j + 1) +
                              ": composite is not block diagonal with equal blocks");
  }
  return {a, bb, alpha, nf.v, dec.pairs.size()};
}

PeriodicComplex doubled_complex(const DoubledPair& pair, const LiftedRing& ring) {
  return PeriodicComplex({pair.a.rebind(ring.quotient), pair.b.rebind(ring.quotient)});
}

DoublingCheck verify_doubling(const DoubledPair& pair, const LiftedRing& ring) {
  const auto& F = ring.cover->field();
  DoublingCheck r;
  const std::size_t size = pair.a.rows();
  const std::size_t b = size >> pair.levels;
  Matrix expected(F, size, size);
  const Residue a2 = F.mul(pair.alpha, pair.alpha);
  for (std::size_t i = 0; i < size; ++i) expected(i, i) = i % b < pair.v ? a2 : 1;
  const auto ab = product_f_coefficient(pair.a, pair.b, ring.f);
  const auto ba = product_f_coefficient(pair.b, pair.a, ring.f);
  r.composite_pattern = a2 != 0 && ab && ba && *ab == expected && *ba == expected;
  const PeriodicComplex c = doubled_complex(pair, ring);
  r.complex = is_complex(c);
  r.totally_acyclic = r.complex && is_totally_acyclic(c);
  r.lifting_condition = lifting_condition_check(c, ring);
  return r;
}

std::optional<AlphaSearch> search_alpha(const LinearMatrix& x, const LinearMatrix& w, const SocleDecomposition& dec,
                                        const LiftedRing& ring, std::optional<Residue> max_alpha) {
  const Residue last = max_alpha.value_or(ring.cover->field().modulus() - 1);
  for (Residue alpha = 1; alpha <= last && alpha < ring.cover->field().modulus(); ++alpha) {
    DoubledPair pair = build_doubled(x, w, dec, alpha, ring);
    const DoublingCheck check = verify_doubling(pair, ring);
    if (check.all()) return AlphaSearch{alpha, std::move(pair), check};
  }
  return std::nullopt;
}

}  // namespace tacx
