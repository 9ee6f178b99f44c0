#include "tacx/linalg.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "tacx/error.hpp"

namespace tacx {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p == 2)
    throw ConfigError(
        "characteristic 2 is not supported: the sign conventions of the constructions collapse "
        "when -1 = 1");
  if (p >= (1u << 31) || !is_prime(p))
    throw ConfigError("modulus " + std::to_string(p) + " is not an odd prime below 2^31");
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // Fermat: a^(p-2)
  Residue result = 1;
  Residue base = a;
  std::uint32_t e = p_ - 2;
  while (e) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Residue> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw ShapeError("matrix entry count does not match shape");
}

Matrix Matrix::from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  Matrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ShapeError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = field.reduce(rows[i][j]);
  }
  return m;
}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  for (Residue x : data_)
    if (x) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw ShapeError("matrix product shape mismatch");
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Residue a = (*this)(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out(i, j) = field_.add(out(i, j), field_.mul(a, rhs(k, j)));
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("matrix sum shape mismatch");
  Matrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], rhs.data_[i]);
  return out;
}

Matrix Matrix::scaled(Residue s) const {
  Matrix out(*this);
  for (auto& x : out.data_) x = field_.mul(x, s);
  return out;
}

Vector Matrix::apply(std::span<const Residue> x) const {
  if (x.size() != cols_) throw ShapeError("vector length does not match matrix columns");
  Vector y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += static_cast<std::uint64_t>((*this)(r, c)) * x[c];
      if (acc >= (1ull << 62)) acc %= field_.modulus();
    }
    y[r] = static_cast<Residue>(acc % field_.modulus());
  }
  return y;
}

namespace {

// In-place reduction to RREF; returns pivot columns.
std::vector<std::size_t> reduce_rows(const PrimeField& F, std::span<Residue> a, std::size_t rows,
                                     std::size_t cols, bool full) {
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t sel = pr;
    while (sel < rows && a[sel * cols + c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != pr)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[sel * cols + j], a[pr * cols + j]);
    const Residue inv = F.inv(a[pr * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[pr * cols + j] = F.mul(a[pr * cols + j], inv);
    for (std::size_t r = full ? 0 : pr + 1; r < rows; ++r) {
      if (r == pr) continue;
      const Residue factor = a[r * cols + c];
      if (!factor) continue;
      for (std::size_t j = c; j < cols; ++j)
        a[r * cols + j] = F.sub(a[r * cols + j], F.mul(factor, a[pr * cols + j]));
    }
    pivots.push_back(c);
    ++pr;
  }
  return pivots;
}

}  // namespace

Echelon rref(const Matrix& m) {
  std::vector<Residue> data(m.data().begin(), m.data().end());
  auto pivots = reduce_rows(m.field(), data, m.rows(), m.cols(), true);
  return {Matrix(m.field(), m.rows(), m.cols(), std::move(data)), std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  std::vector<Residue> data(m.data().begin(), m.data().end());
  return rank_in_place(m.field(), data, m.rows(), m.cols());
}

std::size_t rank_in_place(const PrimeField& field, std::span<Residue> data, std::size_t rows,
                          std::size_t cols) {
  return reduce_rows(field, data, rows, cols, false).size();
}

Matrix kernel_basis(const Matrix& m) {
  const auto [reduced, pivots] = rref(m);
  const PrimeField& F = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix basis(F, m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    basis(fc, k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = F.neg(reduced(r, fc));
  }
  return basis;
}

std::optional<Vector> membership(const Matrix& m, std::span<const Residue> v) {
  if (v.size() != m.rows()) throw ShapeError("membership: vector length does not match rows");
  const std::size_t cols = m.cols() + 1;
  std::vector<Residue> aug(m.rows() * cols);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug[r * cols + c] = m(r, c);
    aug[r * cols + m.cols()] = v[r];
  }
  auto pivots = reduce_rows(m.field(), aug, m.rows(), cols, true);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r * cols + m.cols()];
  return x;
}

std::optional<Matrix> invert(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("invert: matrix is not square");
  const std::size_t n = m.rows();
  const std::size_t cols = 2 * n;
  std::vector<Residue> aug(n * cols, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug[r * cols + c] = m(r, c);
    aug[r * cols + n + r] = 1;
  }
  auto pivots = reduce_rows(m.field(), aug, n, cols, true);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix out(m.field(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = aug[r * cols + n + c];
  return out;
}

}  // namespace tacx
