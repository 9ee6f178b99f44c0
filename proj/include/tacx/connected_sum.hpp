#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tacx/algebra.hpp"
#include "tacx/linear_complex.hpp"
#include "tacx/presentation.hpp"

namespace tacx {

/// R = (P1 ⊗ P2)/(others(P1), others(P2), x_i y_j, f - g). Variables of R are
/// those of P1 followed by those of P2; the glue quadric f - g is marked as the
/// distinguished quadric of R's presentation, so R can itself be a factor of a
/// further connected sum.
struct ConnectedSum {
  Presentation presentation;
  AlgebraPtr ring;
  /// R_1, R_0 and f (x-side).
  LiftedRing left;
  /// S_1, S_0 and g (y-side).
  LiftedRing right;
  std::vector<std::size_t> a_variables;
  std::vector<std::size_t> b_variables;
  /// Image of f (equivalently of g) in [R]_2.
  Vector delta;
};

/// Throws ValidationError on name collisions, missing distinguished quadrics,
/// an unfaithful truncation or delta = 0.
ConnectedSum build_connected_sum(const Presentation& p1, const Presentation& p2, PrimeField field);

/// Splits each entry by the variable partition: A over R_1, B over S_1.
std::pair<LinearMatrix, LinearMatrix> split_matrix(const ConnectedSum& cs, const LinearMatrix& d);
/// A matrix over R_1 or R_0 (resp. S_1 or S_0) viewed over R.
LinearMatrix embed_left(const ConnectedSum& cs, const LinearMatrix& a);
LinearMatrix embed_right(const ConnectedSum& cs, const LinearMatrix& b);

struct Assembly {
  PeriodicComplex complex;
  /// Sign applied to each B-side map of the unrolled period.
  std::vector<int> signs;
  std::size_t copies_a = 1;
  std::size_t copies_b = 1;
};

/// d_k = A'_k + sign_k B'_k. Both sides are unrolled to a common period and
/// padded by direct sums to a common rank. All signs are +1 when that already
/// cancels; otherwise auto_sign alternates them (doubling an odd period).
/// The lifted composites must satisfy A~_{k-1}A~_k = f M and B~_{k-1}B~_k = g N
/// with M + N = 0; otherwise ConstructionError names the position.
Assembly assemble(const ConnectedSum& cs, const PeriodicComplex& a_side, const PeriodicComplex& b_side,
                  bool auto_sign = true);

struct GorensteinCrosscheck {
  bool gor_r = false;
  bool gor_r0 = false;
  bool gor_s0 = false;
  bool gor_r1 = false;
  bool gor_s1 = false;
  /// gor_r == (gor_r0 && gor_s0)
  bool consistent = false;
};

/// Throws InvariantViolation when the flags are inconsistent.
GorensteinCrosscheck gorenstein_crosscheck(const ConnectedSum& cs);

struct MainResultCheck {
  bool lifting_condition_a = false;
  bool lifting_condition_b = false;
  bool hypothesis = false;  // both lifting conditions
  bool complex_a = false;
  bool complex_b = false;
  bool exact_a = false;
  bool exact_b = false;
  bool exact_assembled = false;
  bool totally_acyclic_assembled = false;
  /// hypothesis implies (exact_assembled == (exact_a && exact_b))
  bool biconditional = false;
  /// A totally acyclic assembly over non-Gorenstein R must satisfy the lifting
  /// condition on both sides.
  bool necessity = false;
};

/// Exactness at every position of one period (the complex itself, not its dual).
bool exact_everywhere(const PeriodicComplex& c);

MainResultCheck mainresult_crosscheck(const ConnectedSum& cs, const PeriodicComplex& a_side,
                                      const PeriodicComplex& b_side, bool auto_sign = true);

}  // namespace tacx
