#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tacx/algebra.hpp"
#include "tacx/linear_complex.hpp"

namespace tacx {

/// Linear forms a, b with ann(a) = (b) and ann(b) = (a), both scaled so the
/// first nonzero coordinate is 1.
struct EzdPair {
  Vector a;
  Vector b;
  bool operator==(const EzdPair&) const = default;
};

struct EzdVerdict {
  bool exact_zero_divisors = false;
  /// Empty on success, otherwise the first failing condition.
  std::string diagnostic;
};

/// For linear forms in a short algebra, ann(a) = (b) and ann(b) = (a) amount to
/// a·b = 0 and both multiplication maps having rank n - 1 (which forces d = n - 1).
EzdVerdict verify_ezd_detail(const ShortAlgebra& alg, std::span<const Residue> a, std::span<const Residue> b);
bool verify_ezd(const ShortAlgebra& alg, std::span<const Residue> a, std::span<const Residue> b);

/// Scales v so its first nonzero coordinate is 1. Zero stays zero.
void make_projective(const PrimeField& field, Vector& v);

/// Number of projective representatives (p^n - 1) / (p - 1).
std::uint64_t candidate_count(std::uint64_t p, std::size_t n);

struct ExhaustiveOptions {
  /// Refuse enumeration when p^n exceeds this, unless forced.
  std::uint64_t budget = 10'000'000;
  bool force = false;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// All pairs (a, b) with a running over projective representatives, in
/// enumeration order (lead position, then the remaining coordinates as a base-p
/// counter). Throws BudgetExceeded.
std::vector<EzdPair> search_ezd_exhaustive(const ShortAlgebra& alg, const ExhaustiveOptions& options = {});

/// Samples nonzero linear forms with a seeded mt19937_64. trials must be positive.
std::optional<EzdPair> search_ezd_random(const ShortAlgebra& alg, std::size_t trials, std::uint64_t seed);

/// The period-2 complex ... -> R --a--> R --b--> R -> ...; throws ValidationError
/// unless verify_ezd(a, b).
PeriodicComplex ezd_complex(const AlgebraPtr& alg, const Vector& a, const Vector& b);

}  // namespace tacx
