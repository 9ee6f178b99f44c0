#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tacx/algebra.hpp"
#include "tacx/linalg.hpp"
#include "tacx/presentation.hpp"

namespace tacx {

/// A rows x cols matrix whose entries are degree-1 elements of one algebra.
class LinearMatrix {
 public:
  LinearMatrix(AlgebraPtr algebra, std::size_t rows, std::size_t cols);
  /// entries[r][c] is a degree-1 coordinate vector.
  static LinearMatrix from_entries(AlgebraPtr algebra, const std::vector<std::vector<Vector>>& entries);
  /// The 1x1 matrix (a).
  static LinearMatrix scalar(AlgebraPtr algebra, Vector a);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t dim1() const noexcept { return n_; }

  std::span<const Residue> entry(std::size_t r, std::size_t c) const {
    return {data_.data() + (r * cols_ + c) * n_, n_};
  }
  std::span<Residue> entry(std::size_t r, std::size_t c) {
    return {data_.data() + (r * cols_ + c) * n_, n_};
  }

  LinearMatrix transpose() const;
  /// Same coordinates over another algebra with the same degree-1 space
  /// (lifting to R_0 or reducing to R_1).
  LinearMatrix rebind(AlgebraPtr algebra) const;
  LinearMatrix left_multiply(const Matrix& s) const;
  LinearMatrix right_multiply(const Matrix& s) const;
  LinearMatrix scaled(Residue s) const;
  LinearMatrix operator+(const LinearMatrix& other) const;
  LinearMatrix operator-(const LinearMatrix& other) const;
  LinearMatrix direct_sum(const LinearMatrix& other) const;
  /// [[a, b], [c, d]] from equally-sized square-compatible blocks.
  static LinearMatrix block2(const LinearMatrix& a, const LinearMatrix& b, const LinearMatrix& c,
                             const LinearMatrix& d);
  bool is_zero() const;

  /// Compares shape and coordinates; the algebra objects may differ.
  bool operator==(const LinearMatrix& other) const;

 private:
  AlgebraPtr algebra_;
  std::size_t rows_;
  std::size_t cols_;
  std::size_t n_;
  std::vector<Residue> data_;
};

/// A matrix of degree-2 coordinate vectors, the result of composing two linear matrices.
class QuadraticMatrix {
 public:
  QuadraticMatrix(std::size_t rows, std::size_t cols, std::size_t d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Residue> entry(std::size_t r, std::size_t c) const {
    return {data_.data() + (r * cols_ + c) * d_, d_};
  }
  std::span<Residue> entry(std::size_t r, std::size_t c) {
    return {data_.data() + (r * cols_ + c) * d_, d_};
  }
  bool is_zero() const;
  bool operator==(const QuadraticMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t d_;
  std::vector<Residue> data_;
};

/// The matrix product A·B (B applied first), reduced in the algebra.
QuadraticMatrix compose(const LinearMatrix& a, const LinearMatrix& b);

/// Finite stretch of a complex. maps[i] is followed by maps[i-1], so
/// maps[i-1]·maps[i] must vanish.
class ComplexWindow {
 public:
  explicit ComplexWindow(std::vector<LinearMatrix> maps);
  const std::vector<LinearMatrix>& maps() const noexcept { return maps_; }
  std::size_t length() const noexcept { return maps_.size(); }

 private:
  std::vector<LinearMatrix> maps_;
};

/// Period-p complex ... -> m_1 -> m_0 -> m_{p-1} -> ...; target(m_k) = source(m_{k-1 mod p}).
class PeriodicComplex {
 public:
  explicit PeriodicComplex(std::vector<LinearMatrix> maps);
  const std::vector<LinearMatrix>& maps() const noexcept { return maps_; }
  std::size_t period() const noexcept { return maps_.size(); }
  /// Cyclic access; negative indices allowed.
  const LinearMatrix& map(std::ptrdiff_t k) const;
  const AlgebraPtr& algebra() const { return maps_.front().algebra(); }
  /// Same maps repeated to period times * period().
  PeriodicComplex unrolled(std::size_t times) const;

 private:
  std::vector<LinearMatrix> maps_;
};

bool is_complex(const ComplexWindow& w);
bool is_complex(const PeriodicComplex& c);

/// The (rows·d) x (cols·n) matrix of the induced map ([R]_1)^cols -> ([R]_2)^rows.
/// Row index r·d + t, column index s·n + k.
Matrix degree_map(const LinearMatrix& a);
/// The (rows·n) x cols matrix sending e_s to column s as a degree-1 vector.
Matrix column_map(const LinearMatrix& a);

struct ExactnessDetail {
  bool columns_independent = false;  // degree 0 of the kernel is zero
  std::size_t kernel_dim = 0;        // degree-1 kernel of the outgoing map
  std::size_t image_dim = 0;         // span of the incoming columns
  bool surjective = false;           // incoming map onto degree 2
  bool exact() const { return columns_independent && kernel_dim == image_dim && surjective; }
};

/// Exactness of R^a --incoming--> R^b --outgoing--> R^c at R^b, degree by degree.
/// Throws NotAComplex when outgoing·incoming != 0.
ExactnessDetail exactness_detail(const LinearMatrix& incoming, const LinearMatrix& outgoing);
/// Position k sits between m_{k+1} (incoming) and m_k (outgoing).
bool exactness_at(const PeriodicComplex& c, std::size_t position);
/// Position i sits between maps[i+1] and maps[i], for i in [0, length-2].
bool exactness_at(const ComplexWindow& w, std::size_t position);

/// Transposes each map and reverses the arrows.
PeriodicComplex dual(const PeriodicComplex& c);
ComplexWindow dual(const ComplexWindow& w);

struct AcyclicityReport {
  bool complex = false;
  std::vector<bool> exact_at;
  std::vector<bool> dual_exact_at;
  bool totally_acyclic = false;
};

/// Exactness is checked at every position of one period, for the complex and its
/// dual. A positive verdict over a non-Gorenstein ring is cross-checked against
/// constant ranks and dim2 = dim1 - 1 (InvariantViolation if they fail).
AcyclicityReport check_total_acyclicity(const PeriodicComplex& c);
bool is_totally_acyclic(const PeriodicComplex& c);

/// M with A·B = f·M over the cover ring, or nullopt when some entry of the
/// composite is not a multiple of f.
std::optional<Matrix> product_f_coefficient(const LinearMatrix& a, const LinearMatrix& b,
                                            std::span<const Residue> f);

struct LiftingReport {
  bool holds = true;
  /// per_map[k]: f·e_j lies in the image of the lift of m_k for every j.
  std::vector<bool> per_map;
};

/// The lifting condition: (f) R_0^b ⊆ im(lift of m_k) for every map.
LiftingReport lifting_condition(const PeriodicComplex& c, const LiftedRing& ring);
bool lifting_condition_check(const PeriodicComplex& c, const LiftedRing& ring);

struct NormalizedComplex {
  ComplexWindow window;
  std::optional<PeriodicComplex> periodic;
  /// Composite coefficients U_i of the input lifts (lift_i · lift_{i+1} = f U_i).
  std::vector<Matrix> coefficients;
};

/// Rebases lifts so every adjacent composite is exactly f·I, using
/// A'_i = V_i A_i W_i with V_0 = W_0 = I, V_{i+1} = W_i^{-1}, W_{i+1} = (V_i U_i)^{-1}.
/// Throws ConstructionError naming the position of a non-invertible U_i or a
/// composite outside the span of f.
NormalizedComplex normalize(const PeriodicComplex& c, const LiftedRing& ring,
                            std::size_t window_length = 8);

/// Parses "[[...], ...]" or a single linear expression (a 1x1 matrix).
LinearMatrix parse_linear_matrix(std::string_view text, const AlgebraPtr& algebra,
                                 const std::vector<std::pair<std::string, std::string>>& aliases = {});
/// Parses a linear form using the algebra's variable names and the aliases.
Vector parse_linear_form(std::string_view text, const AlgebraPtr& algebra,
                         const std::vector<std::pair<std::string, std::string>>& aliases = {});

PeriodicComplex resolve_complex(const ComplexFile& file, const AlgebraPtr& algebra);
ComplexFile to_complex_file(const PeriodicComplex& c, const std::string& ring_reference);
std::string format_form(const ShortAlgebra& a, std::span<const Residue> v);

struct LoadedComplex {
  std::string ring_path;
  Presentation presentation;
  AlgebraPtr algebra;
  PeriodicComplex complex;
};

/// Reads a .cx file; the ring path is resolved relative to the file. The
/// prime is the override if given, else the ring file's [field], else default.
LoadedComplex load_complex(const std::string& path, std::optional<std::uint32_t> prime = std::nullopt);

}  // namespace tacx
