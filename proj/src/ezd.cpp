#include "tacx/ezd.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <thread>

#include "tacx/error.hpp"

namespace tacx {

namespace {

bool is_zero(std::span<const Residue> v) {
  return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

// Fills out (d x n, row-major) with the matrix of v -> a·v.
void fill_multiplication(const ShortAlgebra& alg, std::span<const Residue> a, std::vector<Residue>& out) {
  const std::size_t n = alg.dim1(), d = alg.dim2();
  const std::uint64_t p = alg.field().modulus();
  std::vector<std::uint64_t> acc(d * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (std::size_t k = 0; k < n; ++k) {
      const auto red = alg.reduce(i, k);
      for (std::size_t t = 0; t < d; ++t)
        if (red[t]) acc[t * n + k] = (acc[t * n + k] + static_cast<std::uint64_t>(a[i]) * red[t]) % p;
    }
  }
  out.assign(acc.begin(), acc.end());
}

// Candidate test used by both searches: rank n - 1, kernel spanned by a b that
// also passes verification.
std::optional<EzdPair> test_candidate(const ShortAlgebra& alg, const Vector& a, std::vector<Residue>& scratch) {
  const std::size_t n = alg.dim1(), d = alg.dim2();
  if (d + 1 != n) return std::nullopt;
  fill_multiplication(alg, a, scratch);
  if (rank_in_place(alg.field(), scratch, d, n) + 1 != n) return std::nullopt;
  const Matrix kernel = kernel_basis(alg.multiplication_map(a));
  Vector b = kernel.column(0);
  make_projective(alg.field(), b);
  if (!verify_ezd(alg, a, b)) return std::nullopt;
  return EzdPair{a, std::move(b)};
}

// The canonical candidate with the given enumeration index.
Vector candidate(std::uint64_t index, std::uint64_t p, std::size_t n) {
  Vector v(n, 0);
  std::size_t lead = 0;
  std::uint64_t block = 1;
  for (std::size_t k = 1; k < n; ++k) block *= p;  // p^(n - 1 - lead)
  while (index >= block) {
    index -= block;
    block /= p;
    ++lead;
  }
  v[lead] = 1;
  for (std::size_t k = n; k-- > lead + 1;) {
    v[k] = static_cast<Residue>(index % p);
    index /= p;
  }
  return v;
}

// Steps to the next candidate: the tail after the lead is a base-p counter and
// its overflow moves the lead one place right.
void next_candidate(Vector& a, std::uint64_t p) {
  const std::size_t n = a.size();
  std::size_t lead = 0;
  while (lead < n && a[lead] == 0) ++lead;
  for (std::size_t k = n; k-- > lead + 1;) {
    if (++a[k] < p) return;
    a[k] = 0;
  }
  a[lead] = 0;
  if (lead + 1 < n) a[lead + 1] = 1;
}

}  // namespace

void make_projective(const PrimeField& field, Vector& v) {
  auto it = std::find_if(v.begin(), v.end(), [](Residue x) { return x != 0; });
  if (it == v.end()) return;
  const Residue inv = field.inv(*it);
  for (auto& x : v) x = field.mul(x, inv);
}

EzdVerdict verify_ezd_detail(const ShortAlgebra& alg, std::span<const Residue> a, std::span<const Residue> b) {
  const std::size_t n = alg.dim1(), d = alg.dim2();
  if (a.size() != n || b.size() != n) throw ValidationError("exact zero divisor candidates must be linear forms");
  if (is_zero(a) || is_zero(b)) return {false, "a and b must be nonzero"};
  if (d + 1 != n)
    return {false, "dim2 = " + std::to_string(d) + " differs from dim1 - 1 = " + std::to_string(n - 1) +
                       "; no linear exact zero divisors"};
  if (!is_zero(alg.product(a, b))) return {false, "a·b is nonzero"};
  if (rank(alg.multiplication_map(a)) + 1 != n) return {false, "ann(a) in degree 1 is not spanned by b"};
  if (rank(alg.multiplication_map(b)) + 1 != n) return {false, "ann(b) in degree 1 is not spanned by a"};
  return {true, ""};
}

bool verify_ezd(const ShortAlgebra& alg, std::span<const Residue> a, std::span<const Residue> b) {
  return verify_ezd_detail(alg, a, b).exact_zero_divisors;
}

std::uint64_t candidate_count(std::uint64_t p, std::size_t n) {
  std::uint64_t total = 0, power = 1;
  for (std::size_t k = 0; k < n; ++k) {
    total += power;
    if (power > std::numeric_limits<std::uint64_t>::max() / p) return std::numeric_limits<std::uint64_t>::max();
    power *= p;
  }
  return total;
}

std::vector<EzdPair> search_ezd_exhaustive(const ShortAlgebra& alg, const ExhaustiveOptions& options) {
  const std::size_t n = alg.dim1();
  const std::uint64_t p = alg.field().modulus();
  if (n == 0) return {};
  const std::uint64_t total = candidate_count(p, n);
  // total ~ p^n / (p - 1); compare p^n itself against the budget.
  long double space = 1;
  for (std::size_t k = 0; k < n; ++k) space *= static_cast<long double>(p);
  if (!options.force && space > static_cast<long double>(options.budget))
    throw BudgetExceeded("exhaustive search over " + std::to_string(p) + "^" + std::to_string(n) +
                         " linear forms exceeds the budget of " + std::to_string(options.budget) +
                         "; use a proxy prime or force it");
  if (alg.dim2() + 1 != n) return {};

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, total / 256)));
  std::vector<std::vector<EzdPair>> found(threads);
  auto work = [&](unsigned t) {
    const std::uint64_t begin = total * t / threads, end = total * (t + 1) / threads;
    std::vector<Residue> scratch;
    Vector a = candidate(begin, p, n);
    for (std::uint64_t i = begin; i < end; ++i) {
      if (auto pair = test_candidate(alg, a, scratch)) found[t].push_back(std::move(*pair));
      next_candidate(a, p);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();

  std::vector<EzdPair> out;
  for (auto& part : found) std::move(part.begin(), part.end(), std::back_inserter(out));
  return out;
}

std::optional<EzdPair> search_ezd_random(const ShortAlgebra& alg, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw ConfigError("trials must be at least 1");
  const std::size_t n = alg.dim1();
  if (n == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> digit(0, alg.field().modulus() - 1);
  std::vector<Residue> scratch;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Vector a(n);
    do {
      for (auto& x : a) x = digit(rng);
    } while (is_zero(a));
    make_projective(alg.field(), a);
    if (auto pair = test_candidate(alg, a, scratch)) return pair;
  }
  return std::nullopt;
}

PeriodicComplex ezd_complex(const AlgebraPtr& alg, const Vector& a, const Vector& b) {
  const auto verdict = verify_ezd_detail(*alg, a, b);
  if (!verdict.exact_zero_divisors) throw ValidationError("not a pair of exact zero divisors: " + verdict.diagnostic);
  return PeriodicComplex({LinearMatrix::scalar(alg, a), LinearMatrix::scalar(alg, b)});
}

}  // namespace tacx
