#include "tacx/linear_complex.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "tacx/error.hpp"

namespace tacx {

// ---------------------------------------------------------------- LinearMatrix

LinearMatrix::LinearMatrix(AlgebraPtr algebra, std::size_t rows, std::size_t cols)
    : algebra_(std::move(algebra)), rows_(rows), cols_(cols), n_(algebra_->dim1()),
      data_(rows * cols * n_, 0) {}

LinearMatrix LinearMatrix::from_entries(AlgebraPtr algebra, const std::vector<std::vector<Vector>>& entries) {
  const std::size_t rows = entries.size();
  const std::size_t cols = rows ? entries.front().size() : 0;
  LinearMatrix m(std::move(algebra), rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (entries[r].size() != cols) throw ShapeError("ragged linear matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (entries[r][c].size() != m.n_) throw ShapeError("entry is not a degree-1 vector of the algebra");
      std::copy(entries[r][c].begin(), entries[r][c].end(), m.entry(r, c).begin());
    }
  }
  return m;
}

LinearMatrix LinearMatrix::scalar(AlgebraPtr algebra, Vector a) {
  return from_entries(std::move(algebra), {{std::move(a)}});
}

LinearMatrix LinearMatrix::transpose() const {
  LinearMatrix t(algebra_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) std::ranges::copy(entry(r, c), t.entry(c, r).begin());
  return t;
}

LinearMatrix LinearMatrix::rebind(AlgebraPtr algebra) const {
  if (algebra->dim1() != n_) throw ShapeError("cannot rebind: degree-1 dimensions differ");
  LinearMatrix out(*this);
  out.algebra_ = std::move(algebra);
  return out;
}

LinearMatrix LinearMatrix::left_multiply(const Matrix& s) const {
  if (s.cols() != rows_) throw ShapeError("left_multiply shape mismatch");
  const auto& F = algebra_->field();
  LinearMatrix out(algebra_, s.rows(), cols_);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t k = 0; k < rows_; ++k) {
      const Residue a = s(i, k);
      if (!a) continue;
      for (std::size_t c = 0; c < cols_; ++c) {
        auto dst = out.entry(i, c);
        auto src = entry(k, c);
        for (std::size_t t = 0; t < n_; ++t) dst[t] = F.add(dst[t], F.mul(a, src[t]));
      }
    }
  return out;
}

LinearMatrix LinearMatrix::right_multiply(const Matrix& s) const {
  if (s.rows() != cols_) throw ShapeError("right_multiply shape mismatch");
  const auto& F = algebra_->field();
  LinearMatrix out(algebra_, rows_, s.cols());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      auto src = entry(r, k);
      for (std::size_t c = 0; c < s.cols(); ++c) {
        const Residue a = s(k, c);
        if (!a) continue;
        auto dst = out.entry(r, c);
        for (std::size_t t = 0; t < n_; ++t) dst[t] = F.add(dst[t], F.mul(a, src[t]));
      }
    }
  return out;
}

LinearMatrix LinearMatrix::scaled(Residue s) const {
  const auto& F = algebra_->field();
  LinearMatrix out(*this);
  for (auto& x : out.data_) x = F.mul(s, x);
  return out;
}

LinearMatrix LinearMatrix::operator+(const LinearMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_ || n_ != other.n_) throw ShapeError("sum shape mismatch");
  const auto& F = algebra_->field();
  LinearMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = F.add(data_[i], other.data_[i]);
  return out;
}

LinearMatrix LinearMatrix::operator-(const LinearMatrix& other) const {
  return *this + other.scaled(algebra_->field().neg(1));
}

LinearMatrix LinearMatrix::direct_sum(const LinearMatrix& other) const {
  if (n_ != other.n_) throw ShapeError("direct sum over different algebras");
  LinearMatrix out(algebra_, rows_ + other.rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) std::ranges::copy(entry(r, c), out.entry(r, c).begin());
  for (std::size_t r = 0; r < other.rows_; ++r)
    for (std::size_t c = 0; c < other.cols_; ++c)
      std::ranges::copy(other.entry(r, c), out.entry(rows_ + r, cols_ + c).begin());
  return out;
}

LinearMatrix LinearMatrix::block2(const LinearMatrix& a, const LinearMatrix& b, const LinearMatrix& c,
                                  const LinearMatrix& d) {
  if (a.rows_ != b.rows_ || c.rows_ != d.rows_ || a.cols_ != c.cols_ || b.cols_ != d.cols_)
    throw ShapeError("block matrix shapes do not fit");
  LinearMatrix out(a.algebra_, a.rows_ + c.rows_, a.cols_ + b.cols_);
  auto place = [&out](const LinearMatrix& m, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < m.rows_; ++r)
      for (std::size_t c = 0; c < m.cols_; ++c) std::ranges::copy(m.entry(r, c), out.entry(r0 + r, c0 + c).begin());
  };
  place(a, 0, 0);
  place(b, 0, a.cols_);
  place(c, a.rows_, 0);
  place(d, a.rows_, a.cols_);
  return out;
}

bool LinearMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

bool LinearMatrix::operator==(const LinearMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && n_ == other.n_ && data_ == other.data_;
}

// ------------------------------------------------------------- QuadraticMatrix

QuadraticMatrix::QuadraticMatrix(std::size_t rows, std::size_t cols, std::size_t d)
    : rows_(rows), cols_(cols), d_(d), data_(rows * cols * d, 0) {}

bool QuadraticMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

QuadraticMatrix compose(const LinearMatrix& a, const LinearMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("compose: shapes do not chain");
  if (a.dim1() != b.dim1()) throw ShapeError("compose: matrices over different algebras");
  const ShortAlgebra& alg = *a.algebra();
  const auto& F = alg.field();
  QuadraticMatrix out(a.rows(), b.cols(), alg.dim2());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t s = 0; s < b.cols(); ++s) {
      auto dst = out.entry(r, s);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const Vector p = alg.product(a.entry(r, k), b.entry(k, s));
        for (std::size_t t = 0; t < p.size(); ++t) dst[t] = F.add(dst[t], p[t]);
      }
    }
  return out;
}

// ------------------------------------------------------------------ complexes

namespace {

void check_same_algebra(const std::vector<LinearMatrix>& maps) {
  for (const auto& m : maps)
    if (m.algebra() != maps.front().algebra())
      throw ShapeError("maps of a complex must share one algebra");
}

}  // namespace

ComplexWindow::ComplexWindow(std::vector<LinearMatrix> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw ShapeError("empty complex window");
  check_same_algebra(maps_);
  for (std::size_t i = 1; i < maps_.size(); ++i)
    if (maps_[i].rows() != maps_[i - 1].cols())
      throw ShapeError("window shapes do not chain at map " + std::to_string(i));
}

PeriodicComplex::PeriodicComplex(std::vector<LinearMatrix> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw ShapeError("periodic complex needs period >= 1");
  check_same_algebra(maps_);
  for (std::size_t k = 0; k < maps_.size(); ++k)
    if (maps_[k].rows() != map(static_cast<std::ptrdiff_t>(k) - 1).cols())
      throw ShapeError("periodic shapes do not chain at map " + std::to_string(k));
}

const LinearMatrix& PeriodicComplex::map(std::ptrdiff_t k) const {
  const auto p = static_cast<std::ptrdiff_t>(maps_.size());
  return maps_[static_cast<std::size_t>(((k % p) + p) % p)];
}

PeriodicComplex PeriodicComplex::unrolled(std::size_t times) const {
  std::vector<LinearMatrix> maps;
  for (std::size_t t = 0; t < times; ++t) maps.insert(maps.end(), maps_.begin(), maps_.end());
  return PeriodicComplex(std::move(maps));
}

bool is_complex(const ComplexWindow& w) {
  for (std::size_t i = 1; i < w.length(); ++i)
    if (!compose(w.maps()[i - 1], w.maps()[i]).is_zero()) return false;
  return true;
}

bool is_complex(const PeriodicComplex& c) {
  for (std::size_t k = 0; k < c.period(); ++k) {
    const auto i = static_cast<std::ptrdiff_t>(k);
    if (!compose(c.map(i - 1), c.map(i)).is_zero()) return false;
  }
  return true;
}

Matrix degree_map(const LinearMatrix& a) {
  const ShortAlgebra& alg = *a.algebra();
  const auto& F = alg.field();
  const std::size_t n = alg.dim1(), d = alg.dim2();
  Matrix m(F, a.rows() * d, a.cols() * n);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t s = 0; s < a.cols(); ++s) {
      const auto e = a.entry(r, s);
      for (std::size_t i = 0; i < n; ++i) {
        if (!e[i]) continue;
        for (std::size_t k = 0; k < n; ++k) {
          const auto red = alg.reduce(i, k);
          for (std::size_t t = 0; t < d; ++t)
            if (red[t]) m(r * d + t, s * n + k) = F.add(m(r * d + t, s * n + k), F.mul(e[i], red[t]));
        }
      }
    }
  return m;
}

Matrix column_map(const LinearMatrix& a) {
  const std::size_t n = a.dim1();
  Matrix m(a.algebra()->field(), a.rows() * n, a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t s = 0; s < a.cols(); ++s) {
      const auto e = a.entry(r, s);
      for (std::size_t k = 0; k < n; ++k) m(r * n + k, s) = e[k];
    }
  return m;
}

ExactnessDetail exactness_detail(const LinearMatrix& incoming, const LinearMatrix& outgoing) {
  if (outgoing.cols() != incoming.rows()) throw ShapeError("exactness: shapes do not chain");
  if (!compose(outgoing, incoming).is_zero()) throw NotAComplex("not a complex: composite is nonzero");
  const std::size_t n = outgoing.dim1();
  const std::size_t d = outgoing.algebra()->dim2();
  ExactnessDetail e;
  e.columns_independent = rank(column_map(outgoing)) == outgoing.cols();
  e.kernel_dim = outgoing.cols() * n - rank(degree_map(outgoing));
  e.image_dim = rank(column_map(incoming));
  e.surjective = rank(degree_map(incoming)) == incoming.rows() * d;
  return e;
}

bool exactness_at(const PeriodicComplex& c, std::size_t position) {
  const auto k = static_cast<std::ptrdiff_t>(position);
  return exactness_detail(c.map(k + 1), c.map(k)).exact();
}

bool exactness_at(const ComplexWindow& w, std::size_t position) {
  if (position + 1 >= w.length())
    throw ShapeError("position " + std::to_string(position) + " is a boundary of the window");
  return exactness_detail(w.maps()[position + 1], w.maps()[position]).exact();
}

PeriodicComplex dual(const PeriodicComplex& c) {
  std::vector<LinearMatrix> maps;
  const std::size_t p = c.period();
  for (std::size_t j = 0; j < p; ++j) maps.push_back(c.maps()[p - 1 - j].transpose());
  return PeriodicComplex(std::move(maps));
}

ComplexWindow dual(const ComplexWindow& w) {
  std::vector<LinearMatrix> maps;
  const std::size_t l = w.length();
  for (std::size_t j = 0; j < l; ++j) maps.push_back(w.maps()[l - 1 - j].transpose());
  return ComplexWindow(std::move(maps));
}

AcyclicityReport check_total_acyclicity(const PeriodicComplex& c) {
  AcyclicityReport r;
  const PeriodicComplex d = dual(c);
  r.complex = is_complex(c);
  if (!r.complex) {
    r.exact_at.assign(c.period(), false);
    r.dual_exact_at.assign(c.period(), false);
    return r;
  }
  for (std::size_t k = 0; k < c.period(); ++k) r.exact_at.push_back(exactness_at(c, k));
  for (std::size_t k = 0; k < d.period(); ++k) r.dual_exact_at.push_back(exactness_at(d, k));
  r.totally_acyclic = std::ranges::all_of(r.exact_at, [](bool b) { return b; }) &&
                      std::ranges::all_of(r.dual_exact_at, [](bool b) { return b; });

  if (r.totally_acyclic) {
    const ShortAlgebra& alg = *c.algebra();
    bool nonzero = false;
    bool constant = true;
    for (const auto& m : c.maps()) {
      nonzero = nonzero || m.rows() > 0;
      constant = constant && m.rows() == c.maps().front().rows() && m.cols() == m.rows();
    }
    if (nonzero && !is_gorenstein(alg) && (!constant || !yoshino_check(alg).dim_condition))
      throw InvariantViolation(
          "totally acyclic complex over a non-Gorenstein ring with non-constant ranks or "
          "dim2 != dim1 - 1");
  }
  return r;
}

bool is_totally_acyclic(const PeriodicComplex& c) { return check_total_acyclicity(c).totally_acyclic; }

std::optional<Matrix> product_f_coefficient(const LinearMatrix& a, const LinearMatrix& b,
                                            std::span<const Residue> f) {
  const auto comp = compose(a, b);
  const auto& F = a.algebra()->field();
  std::size_t lead = 0;
  while (lead < f.size() && f[lead] == 0) ++lead;
  if (lead == f.size()) throw ValidationError("f is zero in the cover ring");
  if (f.size() != a.algebra()->dim2()) throw ShapeError("f has the wrong length");
  const Residue inv = F.inv(f[lead]);
  Matrix m(F, comp.rows(), comp.cols());
  for (std::size_t r = 0; r < comp.rows(); ++r)
    for (std::size_t s = 0; s < comp.cols(); ++s) {
      const auto e = comp.entry(r, s);
      const Residue lambda = F.mul(e[lead], inv);
      for (std::size_t t = 0; t < f.size(); ++t)
        if (e[t] != F.mul(lambda, f[t])) return std::nullopt;
      m(r, s) = lambda;
    }
  return m;
}

LiftingReport lifting_condition(const PeriodicComplex& c, const LiftedRing& ring) {
  if (ring.f.empty() || std::ranges::all_of(ring.f, [](Residue x) { return x == 0; }))
    throw ValidationError("f is zero in R_0");
  LiftingReport report;
  const std::size_t d = ring.cover->dim2();
  for (const auto& m : c.maps()) {
    const LinearMatrix lift = m.rebind(ring.cover);
    const Matrix L = degree_map(lift);
    bool ok = true;
    for (std::size_t j = 0; j < lift.rows() && ok; ++j) {
      Vector target(lift.rows() * d, 0);
      std::copy(ring.f.begin(), ring.f.end(), target.begin() + j * d);
      ok = membership(L, target).has_value();
    }
    report.per_map.push_back(ok);
    report.holds = report.holds && ok;
  }
  return report;
}

bool lifting_condition_check(const PeriodicComplex& c, const LiftedRing& ring) {
  return lifting_condition(c, ring).holds;
}

NormalizedComplex normalize(const PeriodicComplex& c, const LiftedRing& ring, std::size_t window_length) {
  if (window_length == 0) throw ConfigError("window length must be positive");
  const auto& F = ring.cover->field();
  std::vector<LinearMatrix> lifts;
  for (std::size_t i = 0; i < window_length; ++i)
    lifts.push_back(c.map(static_cast<std::ptrdiff_t>(i)).rebind(ring.cover));
  for (const auto& m : lifts)
    if (m.rows() != m.cols()) throw ConstructionError("normalization needs square maps of constant rank");

  std::vector<Matrix> coefficients;
  std::vector<Matrix> u_inverse;
  for (std::size_t i = 0; i + 1 < window_length; ++i) {
    auto u = product_f_coefficient(lifts[i], lifts[i + 1], ring.f);
    if (!u)
      throw ConstructionError("composite at position " + std::to_string(i) + " is not a multiple of f");
    coefficients.push_back(*u);
  }

  const std::size_t b = lifts.front().rows();
  Matrix v = Matrix::identity(F, b);
  Matrix w = Matrix::identity(F, b);
  std::vector<LinearMatrix> out;
  for (std::size_t i = 0; i < window_length; ++i) {
    out.push_back(lifts[i].left_multiply(v).right_multiply(w));
    if (i + 1 == window_length) break;
    auto w_inv = invert(w);
    auto vu_inv = invert(v * coefficients[i]);
    if (!vu_inv)
      throw ConstructionError("U_" + std::to_string(i) + " is not invertible (position " + std::to_string(i) +
                              "); the lifting condition fails");
    v = *w_inv;
    w = *vu_inv;
  }
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    auto m = product_f_coefficient(out[i], out[i + 1], ring.f);
    if (!m || !m->is_identity()) throw InvariantViolation("normalization did not produce f·I");
  }

  std::vector<LinearMatrix> reduced;
  for (const auto& m : out) reduced.push_back(m.rebind(ring.quotient));
  NormalizedComplex result{ComplexWindow(reduced), std::nullopt, std::move(coefficients)};

  const std::size_t p = c.period();
  if (window_length >= 2 * p) {
    bool periodic = true;
    for (std::size_t i = 0; i + p < window_length && periodic; ++i) periodic = out[i] == out[i + p];
    if (periodic)
      result.periodic = PeriodicComplex(std::vector<LinearMatrix>(reduced.begin(), reduced.begin() + p));
  }
  return result;
}

// ------------------------------------------------------------------ text forms

namespace {

Resolver alias_resolver(const AlgebraPtr& algebra, const std::vector<std::pair<std::string, std::string>>& aliases,
                        std::map<std::string, LinearTerms>& storage) {
  const auto& vars = algebra->presentation().variables;
  Resolver base = [&vars, &storage](std::string_view name) -> std::optional<LinearTerms> {
    if (auto it = storage.find(std::string(name)); it != storage.end()) return it->second;
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (vars[k] == name) return LinearTerms{{k, 1}};
    return std::nullopt;
  };
  for (const auto& [name, expr] : aliases) {
    const auto poly = parse_expression(expr, base);
    if (poly.constant != 0 || !poly.quadratic.empty())
      throw ParseError("alias '" + name + "' is not a linear form");
    storage[name] = poly.linear;
  }
  return base;
}

Vector linear_entry(std::string_view text, const Resolver& resolve, const ShortAlgebra& alg) {
  const auto poly = parse_expression(text, resolve);
  if (!poly.quadratic.empty()) throw ParseError("entry '" + std::string(text) + "' has degree 2");
  if (poly.constant != 0 && alg.field().reduce(poly.constant) != 0)
    throw ParseError("entry '" + std::string(text) + "' has a nonzero constant; differentials must be minimal");
  return alg.linear_vector(poly.linear);
}

}  // namespace

LinearMatrix parse_linear_matrix(std::string_view text, const AlgebraPtr& algebra,
                                 const std::vector<std::pair<std::string, std::string>>& aliases) {
  std::map<std::string, LinearTerms> storage;
  const Resolver resolve = alias_resolver(algebra, aliases, storage);
  auto trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  if (trimmed.empty() || trimmed.front() != '[')
    return LinearMatrix::scalar(algebra, linear_entry(text, resolve, *algebra));
  const auto rows = parse_matrix_entries(trimmed);
  std::vector<std::vector<Vector>> entries;
  for (const auto& row : rows) {
    entries.emplace_back();
    for (const auto& e : row) entries.back().push_back(linear_entry(e, resolve, *algebra));
  }
  return LinearMatrix::from_entries(algebra, entries);
}

Vector parse_linear_form(std::string_view text, const AlgebraPtr& algebra,
                         const std::vector<std::pair<std::string, std::string>>& aliases) {
  std::map<std::string, LinearTerms> storage;
  const Resolver resolve = alias_resolver(algebra, aliases, storage);
  return linear_entry(text, resolve, *algebra);
}

PeriodicComplex resolve_complex(const ComplexFile& file, const AlgebraPtr& algebra) {
  std::map<std::string, LinearTerms> storage;
  const Resolver resolve = alias_resolver(algebra, file.aliases, storage);
  std::vector<LinearMatrix> maps;
  for (const auto& m : file.matrices) {
    std::vector<std::vector<Vector>> entries;
    for (const auto& row : m) {
      entries.emplace_back();
      for (const auto& e : row) entries.back().push_back(linear_entry(e, resolve, *algebra));
    }
    maps.push_back(m.empty() ? LinearMatrix(algebra, 0, 0) : LinearMatrix::from_entries(algebra, entries));
  }
  return PeriodicComplex(std::move(maps));
}

std::string format_form(const ShortAlgebra& a, std::span<const Residue> v) {
  LinearTerms t;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k]) t[k] = a.field().signed_value(v[k]);
  return format_linear(a.presentation().variables, t);
}

ComplexFile to_complex_file(const PeriodicComplex& c, const std::string& ring_reference) {
  ComplexFile f;
  f.ring = ring_reference;
  f.period = c.period();
  const ShortAlgebra& alg = *c.algebra();
  for (const auto& m : c.maps()) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      rows.emplace_back();
      for (std::size_t s = 0; s < m.cols(); ++s) rows.back().push_back(format_form(alg, m.entry(r, s)));
    }
    f.matrices.push_back(std::move(rows));
  }
  return f;
}

LoadedComplex load_complex(const std::string& path, std::optional<std::uint32_t> prime) {
  const ComplexFile file = parse_complex_file(read_text_file(path));
  const auto ring_path = (std::filesystem::path(path).parent_path() / file.ring).string();
  if (!std::filesystem::exists(ring_path)) throw ValidationError("unknown ring reference '" + file.ring + "'");
  Presentation p = parse_ring_file(read_text_file(ring_path));
  const PrimeField field(prime.value_or(p.prime.value_or(PrimeField::kDefaultPrime)));
  auto algebra = make_algebra(p, field);
  auto complex = resolve_complex(file, algebra);
  return {ring_path, std::move(p), std::move(algebra), std::move(complex)};
}

}  // namespace tacx
