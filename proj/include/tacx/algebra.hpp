#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "tacx/linalg.hpp"
#include "tacx/presentation.hpp"

namespace tacx {

/// An element c0 + v1 + v2 of k ⊕ [R]_1 ⊕ [R]_2, in coordinates.
struct Element {
  Residue c0 = 0;
  Vector v1;
  Vector v2;

  bool is_linear() const;
  bool is_zero() const;
  bool operator==(const Element&) const = default;
};

/// The truncated graded algebra k ⊕ R_1 ⊕ R_2 defined by a quadric presentation.
/// Degree three and above is zero by construction; verify_truncation certifies
/// whether the honest quotient agrees.
///
/// The degree-2 basis is the set of non-pivot monomials of the RREF of the
/// quadric coefficient matrix, in lex order on (i, j).
class ShortAlgebra {
 public:
  static ShortAlgebra build(const Presentation& p, PrimeField field);

  const PrimeField& field() const noexcept { return field_; }
  const Presentation& presentation() const noexcept { return presentation_; }
  std::size_t dim1() const noexcept { return n_; }
  std::size_t dim2() const noexcept { return d_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& basis_monomials() const noexcept {
    return basis_;
  }

  /// Coordinates of x_i x_j in the degree-2 basis.
  std::span<const Residue> reduce(std::size_t i, std::size_t j) const {
    return {table_.data() + (i * n_ + j) * d_, d_};
  }
  Vector reduce_quadric(const QuadricTerms& q) const;
  Vector linear_vector(const LinearTerms& t) const;

  /// Bilinear product of two degree-1 coordinate vectors.
  Vector product(std::span<const Residue> a, std::span<const Residue> b) const;
  /// The d x n matrix of v -> a·v on degree one.
  Matrix multiplication_map(std::span<const Residue> a) const;

  Element zero() const;
  Element one() const;
  Element variable(std::size_t k) const;
  Element linear(Vector v1) const;
  Element quadratic(Vector v2) const;

 private:
  ShortAlgebra(PrimeField field, Presentation p) : field_(field), presentation_(std::move(p)) {}

  PrimeField field_;
  Presentation presentation_;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> basis_;
  std::vector<Residue> table_;
};

using AlgebraPtr = std::shared_ptr<const ShortAlgebra>;

AlgebraPtr make_algebra(const Presentation& p, PrimeField field);

Element multiply(const ShortAlgebra& a, const Element& x, const Element& y);
Element add(const ShortAlgebra& a, const Element& x, const Element& y);
Element scale(const ShortAlgebra& a, Residue s, const Element& x);

/// True iff every cubic monomial lies in the span of {variable * quadric}, i.e.
/// the quotient by the quadrics has no degree-3 part. The distinguished quadric
/// counts: for R_0 = P/(I + m f) the cubic part of the ideal is the same.
bool verify_truncation(const Presentation& p, const PrimeField& field);

/// d + dim{v in degree 1 : v·x = 0 for every variable x}; the field has socle
/// dimension 1.
std::size_t socle_dimension(const ShortAlgebra& a);
bool is_gorenstein(const ShortAlgebra& a);

struct YoshinoReport {
  std::size_t dim1 = 0;
  std::size_t dim2 = 0;
  /// Always true: every presentation here is by quadrics.
  bool quadric_defined = true;
  /// dim2 == dim1 - 1
  bool dim_condition = false;
};

YoshinoReport yoshino_check(const ShortAlgebra& a);

/// R_1 = P/(I + (f)) together with its cover R_0 = P/(I + m f) and the image
/// of f in [R_0]_2. Both share degree-1 coordinates, so linear matrices lift
/// by reinterpretation.
struct LiftedRing {
  AlgebraPtr quotient;
  AlgebraPtr cover;
  Vector f;
};

Presentation without_distinguished(const Presentation& p);
/// Throws ValidationError when p has no distinguished quadric.
LiftedRing make_lifted_ring(const Presentation& p, PrimeField field);

}  // namespace tacx
