#pragma once

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tacx/algebra.hpp"
#include "tacx/connected_sum.hpp"
#include "tacx/linear_complex.hpp"
#include "tacx/presentation.hpp"

namespace support {

using namespace tacx;

inline std::string fixture(const std::string& name) { return std::string(TACX_FIXTURES) + "/" + name; }

inline Presentation ring(const std::string& name) { return parse_ring_file(read_text_file(fixture(name))); }

inline AlgebraPtr algebra(const std::string& name, std::uint32_t p = PrimeField::kDefaultPrime) {
  return make_algebra(ring(name), PrimeField(p));
}

inline oracle::Vec to_vec(std::span<const Residue> v) { return oracle::Vec(v.begin(), v.end()); }

inline std::vector<std::vector<oracle::Vec>> entries(const LinearMatrix& m) {
  std::vector<std::vector<oracle::Vec>> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r].push_back(to_vec(m.entry(r, c)));
  return out;
}

/// Oracle exactness at position k of a periodic complex (incoming m_{k+1}, outgoing m_k).
inline bool oracle_exact_at(const oracle::Algebra& alg, const PeriodicComplex& c, std::size_t k) {
  const auto& in = c.map(static_cast<std::ptrdiff_t>(k) + 1);
  const auto& out = c.map(static_cast<std::ptrdiff_t>(k));
  return oracle::exact(alg, entries(in), in.cols(), entries(out), out.cols());
}

inline bool oracle_exact_everywhere(const oracle::Algebra& alg, const PeriodicComplex& c) {
  for (std::size_t k = 0; k < c.period(); ++k)
    if (!oracle_exact_at(alg, c, k)) return false;
  return true;
}

inline LinearMatrix linear(const AlgebraPtr& alg, const std::string& text) { return parse_linear_matrix(text, alg); }
inline Vector form(const AlgebraPtr& alg, const std::string& text) { return parse_linear_form(text, alg); }

// ------------------------------------------------------------ random instances

/// k[u_1..u_m, w]/((u)^2 + w^2 [+ one quadric from span{u_i w}]) with f = w^2,
/// after a random invertible change of coordinates. The forms a = w + r.u and
/// c = w - r.u (in old coordinates) satisfy a c = f in R_0.
struct RandomFactor {
  Presentation presentation;
  bool degenerate = false;
  std::vector<std::vector<std::int64_t>> transform;  // old variable -> new coordinates
};

inline Matrix random_invertible(std::mt19937_64& rng, const PrimeField& F, std::size_t n) {
  std::uniform_int_distribution<std::uint32_t> digit(0, F.modulus() - 1);
  while (true) {
    Matrix m(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = digit(rng);
    if (invert(m)) return m;
  }
}

inline RandomFactor random_factor(std::mt19937_64& rng, const PrimeField& F, std::size_t m, const std::string& u,
                                  const std::string& w, bool degenerate) {
  const std::size_t n = m + 1;
  std::uniform_int_distribution<std::uint32_t> digit(1, F.modulus() - 1);
  std::vector<QuadricTerms> old;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) old.push_back({{{i, j}, 1}});
  if (degenerate) {
    QuadricTerms q;
    for (std::size_t i = 0; i < m; ++i) q[{i, m}] = digit(rng);
    old.push_back(q);
  }
  old.push_back({{{m, m}, 1}});  // f = w^2, last

  const Matrix t = random_invertible(rng, F, n);
  RandomFactor out;
  out.degenerate = degenerate;
  for (std::size_t i = 0; i < n; ++i) {
    out.transform.emplace_back();
    for (std::size_t j = 0; j < n; ++j) out.transform.back().push_back(t(i, j));
  }
  for (std::size_t i = 0; i < m; ++i) out.presentation.variables.push_back(u + std::to_string(i + 1));
  out.presentation.variables.push_back(w);
  for (const auto& q : old) {
    QuadricTerms nq;
    for (const auto& [key, c] : q)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const std::int64_t coef = static_cast<std::int64_t>(F.mul(F.mul(F.reduce(c), t(key.first, a)),
                                                                    t(key.second, b)));
          if (coef) {
            auto& x = nq[{std::min(a, b), std::max(a, b)}];
            x = F.add(F.reduce(x), static_cast<Residue>(coef));
          }
        }
    std::erase_if(nq, [](const auto& kv) { return kv.second == 0; });
    out.presentation.quadrics.push_back({nq});
  }
  out.presentation.distinguished = out.presentation.quadrics.size() - 1;
  return out;
}

/// Old-coordinate form -> new coordinates.
inline Vector transform_form(const RandomFactor& f, const PrimeField& F, const std::vector<Residue>& old) {
  const std::size_t n = old.size();
  Vector out(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[j] = F.add(out[j], F.mul(old[i], static_cast<Residue>(f.transform[i][j])));
  return out;
}

/// Period-2 complex (A_0, A_1) of rank b over alg with lifted composites f I:
/// A_0 = P diag(a_i) Q and A_1 = Q^-1 diag(c_i) P^-1.
inline PeriodicComplex random_complex(std::mt19937_64& rng, const RandomFactor& f, const AlgebraPtr& alg,
                                      std::size_t b) {
  const PrimeField& F = alg->field();
  const std::size_t n = alg->dim1();
  std::uniform_int_distribution<std::uint32_t> digit(0, F.modulus() - 1);
  LinearMatrix a(alg, b, b), c(alg, b, b);
  for (std::size_t i = 0; i < b; ++i) {
    Vector plus(n, 0), minus(n, 0);
    plus[n - 1] = minus[n - 1] = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      plus[k] = digit(rng);
      minus[k] = F.neg(plus[k]);
    }
    const Vector pa = transform_form(f, F, plus), pc = transform_form(f, F, minus);
    std::ranges::copy(pa, a.entry(i, i).begin());
    std::ranges::copy(pc, c.entry(i, i).begin());
  }
  const Matrix p = random_invertible(rng, F, b), q = random_invertible(rng, F, b);
  const Matrix pi = *invert(p), qi = *invert(q);
  return PeriodicComplex({a.left_multiply(p).right_multiply(q), c.left_multiply(qi).right_multiply(pi)});
}

/// Random algebra with n variables and a few random quadrics, plus a period-2
/// complex (X, W) with W drawn from the solutions of X W = W X = 0.
struct RandomPair {
  AlgebraPtr algebra;
  oracle::Algebra model;
  PeriodicComplex complex;
};

inline RandomPair random_general_pair(std::mt19937_64& rng, std::uint32_t p, std::size_t n, std::size_t b) {
  const PrimeField F(p);
  std::uniform_int_distribution<std::uint32_t> digit(0, p - 1);
  std::uniform_int_distribution<std::size_t> count(1, monomial_count(n));
  Presentation pres;
  for (std::size_t k = 0; k < n; ++k) pres.variables.push_back("v" + std::to_string(k + 1));
  const std::size_t quadrics = count(rng);
  for (std::size_t q = 0; q < quadrics; ++q) {
    QuadricTerms t;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (rng() % 3 == 0) {
          if (auto c = digit(rng)) t[{i, j}] = c;
        }
    if (!t.empty()) pres.quadrics.push_back({t});
  }
  const AlgebraPtr alg = make_algebra(pres, F);
  oracle::Algebra model = oracle::build(pres, p);

  LinearMatrix x(alg, b, b);
  for (std::size_t r = 0; r < b; ++r)
    for (std::size_t c = 0; c < b; ++c)
      for (std::size_t k = 0; k < n; ++k) x.entry(r, c)[k] = rng() % 2 ? digit(rng) : 0;

  // unknowns: W[k][s][j] at index (k*b + s)*n + j
  const std::size_t unknowns = b * b * n;
  oracle::Mat eqs;
  const std::size_t d = model.d;
  for (std::size_t r = 0; r < b; ++r)
    for (std::size_t s = 0; s < b; ++s)
      for (std::size_t t = 0; t < d; ++t) {
        oracle::Vec xw(unknowns, 0), wx(unknowns, 0);
        for (std::size_t k = 0; k < b; ++k)
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
              const auto img = model.image_of_monomial(i, j)[t];
              // (X W)[r][s] uses X[r][k]_i W[k][s]_j ; (W X)[r][s] uses W[r][k]_j X[k][s]_i
              xw[(k * b + s) * n + j] = oracle::norm(xw[(k * b + s) * n + j] + x.entry(r, k)[i] * img, p);
              wx[(r * b + k) * n + j] = oracle::norm(wx[(r * b + k) * n + j] + x.entry(k, s)[i] * img, p);
            }
        eqs.push_back(xw);
        eqs.push_back(wx);
      }
  const auto basis = oracle::nullspace(eqs, unknowns, p);
  oracle::Vec sol(unknowns, 0);
  for (const auto& v : basis) {
    const std::int64_t coef = digit(rng);
    for (std::size_t i = 0; i < unknowns; ++i) sol[i] = oracle::norm(sol[i] + coef * v[i], p);
  }
  LinearMatrix w(alg, b, b);
  for (std::size_t k = 0; k < b; ++k)
    for (std::size_t s = 0; s < b; ++s)
      for (std::size_t j = 0; j < n; ++j) w.entry(k, s)[j] = static_cast<Residue>(sol[(k * b + s) * n + j]);
  return {alg, std::move(model), PeriodicComplex({x, w})};
}

}  // namespace support
