#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "tacx/algebra.hpp"
#include "tacx/linear_complex.hpp"

namespace tacx {

/// f = y_1 z_1 + ... + y_k z_k with linear y_i, z_i in R_0.
struct SocleDecomposition {
  std::vector<std::pair<Vector, Vector>> pairs;
};

/// True iff the products sum to f in [R_0]_2.
bool decomposes_f(const SocleDecomposition& dec, const LiftedRing& ring);
/// One pair (c x_i, x_j) per monomial c x_i x_j of the distinguished quadric.
SocleDecomposition monomial_decomposition(const Presentation& p, const LiftedRing& ring);
/// Parses "(y1, z1); (y2, z2)" (separators ';' or ',' between pairs).
SocleDecomposition parse_decomposition(std::string_view text, const AlgebraPtr& cover);

struct NormalForm {
  LinearMatrix x;
  LinearMatrix w;
  /// Number of zero diagonal entries of the composite coefficient.
  std::size_t v = 0;
  /// Scalar with M^2 = lambda M (0 when M = 0).
  Residue lambda = 0;
};

/// Brings lifts with X~W~ = W~X~ = f M to composite f·diag(0, ..., 0, 1, ..., 1)
/// by a constant similarity and a scaling of W~. Supports M = 0 and M = lambda E
/// with E idempotent; anything else is a ConstructionError carrying M.
NormalForm normal_form(const LinearMatrix& x, const LinearMatrix& w, const LiftedRing& ring);

struct DoubledPair {
  /// Over R_0, size 2^levels · b.
  LinearMatrix a;
  LinearMatrix b;
  Residue alpha = 0;
  std::size_t v = 0;
  std::size_t levels = 0;
};

/// The recursive doubling. X, W are over R_1 (or R_0). When the normal form has
/// v = 0 the normal-form lifts are returned unchanged with levels = 0. Each level
/// checks that both composites are block diagonal with equal diagonal blocks and
/// throws ConstructionError naming the level otherwise.
DoubledPair build_doubled(const LinearMatrix& x, const LinearMatrix& w, const SocleDecomposition& dec,
                          Residue alpha, const LiftedRing& ring);

/// The pair reduced to R_1 as the period-2 complex (a, b).
PeriodicComplex doubled_complex(const DoubledPair& pair, const LiftedRing& ring);

struct DoublingCheck {
  /// Both composites equal f·diag(alpha^2, ..., 1, ...) with alpha != 0.
  bool composite_pattern = false;
  bool complex = false;
  bool totally_acyclic = false;
  bool lifting_condition = false;
  bool all() const { return composite_pattern && complex && totally_acyclic && lifting_condition; }
};

DoublingCheck verify_doubling(const DoubledPair& pair, const LiftedRing& ring);

struct AlphaSearch {
  Residue alpha;
  DoubledPair pair;
  DoublingCheck check;
};

/// Tries alpha = 1, 2, ... up to max_alpha (default p - 1) and returns the first
/// one passing every check.
std::optional<AlphaSearch> search_alpha(const LinearMatrix& x, const LinearMatrix& w, const SocleDecomposition& dec,
                                        const LiftedRing& ring, std::optional<Residue> max_alpha = std::nullopt);

}  // namespace tacx
