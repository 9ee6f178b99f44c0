#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tacx {

using Residue = std::uint32_t;
using Vector = std::vector<Residue>;

/// The prime field F_p, p an odd prime below 2^31.
class PrimeField {
 public:
  static constexpr std::uint32_t kDefaultPrime = 32003;

  /// Throws ConfigError unless p is an odd prime.
  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t modulus() const noexcept { return p_; }

  Residue reduce(std::int64_t value) const noexcept {
    std::int64_t r = value % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  /// Throws std::domain_error on zero.
  Residue inv(Residue a) const;

  /// Signed representative in (-p/2, p/2], used for printing.
  std::int64_t signed_value(Residue a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// Dense row-major matrix over a prime field.
class Matrix {
 public:
  Matrix(PrimeField field, std::size_t rows, std::size_t cols);
  Matrix(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Residue> entries);
  /// Rows given as small signed integers; convenient in tests and fixtures.
  static Matrix from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix identity(PrimeField field, std::size_t n);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> data() const noexcept { return data_; }

  Vector column(std::size_t c) const;
  Matrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix scaled(Residue s) const;
  Vector apply(std::span<const Residue> x) const;

  bool operator==(const Matrix& other) const = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form; leftmost pivot, rows scanned top-down.
Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Columns form the RREF-derived basis of the right kernel, one per free column
/// in increasing order (the free coordinate is 1, other free coordinates 0).
Matrix kernel_basis(const Matrix& m);
/// A particular solution of m x = v with free variables set to zero.
std::optional<Vector> membership(const Matrix& m, std::span<const Residue> v);
std::optional<Matrix> invert(const Matrix& m);

/// Rank of a small row-major block, destroying it. Used in hot enumeration loops.
std::size_t rank_in_place(const PrimeField& field, std::span<Residue> data, std::size_t rows,
                          std::size_t cols);

}  // namespace tacx
