#include "tacx/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "tacx/error.hpp"

namespace tacx {

namespace {

void add_term(LinearTerms& t, std::size_t k, std::int64_t c) {
  if (c == 0) return;
  auto& slot = t[k];
  slot += c;
  if (slot == 0) t.erase(k);
}

void add_term(QuadricTerms& t, std::size_t i, std::size_t j, std::int64_t c) {
  if (c == 0) return;
  auto key = std::minmax(i, j);
  auto& slot = t[{key.first, key.second}];
  slot += c;
  if (slot == 0) t.erase({key.first, key.second});
}

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const Resolver& resolve, std::size_t line,
                   std::size_t column)
      : text_(text), resolve_(resolve), line_(line), column_(column) {}

  Polynomial parse() {
    Polynomial out;
    skip_space();
    if (at_end()) fail("empty expression");
    std::int64_t sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    parse_term(sign, out);
    for (;;) {
      skip_space();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("unexpected character '") + c + "'");
      ++pos_;
      parse_term(c == '-' ? -1 : 1, out);
    }
    return out;
  }

 private:
  struct Factor {
    std::int64_t scalar = 1;
    std::vector<LinearTerms> linear;
  };

  void parse_term(std::int64_t sign, Polynomial& out) {
    Factor f;
    f.scalar = sign;
    parse_factor(f);
    for (;;) {
      skip_space();
      if (at_end() || peek() != '*') break;
      ++pos_;
      parse_factor(f);
    }
    switch (f.linear.size()) {
      case 0:
        out.constant += f.scalar;
        break;
      case 1:
        for (auto [k, c] : f.linear[0]) add_term(out.linear, k, f.scalar * c);
        break;
      case 2:
        for (auto [i, a] : f.linear[0])
          for (auto [j, b] : f.linear[1]) add_term(out.quadratic, i, j, f.scalar * a * b);
        break;
      default:
        break;
    }
  }

  void parse_factor(Factor& f) {
    skip_space();
    if (at_end()) fail("expected a number or identifier");
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      f.scalar *= parse_integer();
      return;
    }
    if (!std::isalpha(static_cast<unsigned char>(peek())))
      fail(std::string("unexpected character '") + peek() + "'");
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    auto form = resolve_(name);
    if (!form) fail_at(start, "unknown variable '" + std::string(name) + "'");
    std::int64_t power = 1;
    skip_space();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_space();
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected an exponent");
      power = parse_integer();
    }
    if (f.linear.size() + static_cast<std::size_t>(power) > 2)
      fail_at(start, "term has degree above 2");
    for (std::int64_t k = 0; k < power; ++k) f.linear.push_back(*form);
  }

  std::int64_t parse_integer() {
    std::int64_t v = 0;
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      if (v > (INT64_MAX - 9) / 10) fail_at(start, "integer too large");
      v = v * 10 + (peek() - '0');
      ++pos_;
    }
    return v;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
    throw ParseError(what, line_, column_ + pos);
  }

  std::string_view text_;
  const Resolver& resolve_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Line {
  std::size_t number;
  std::size_t column;  // column of the first character of text
  std::string_view text;
};

// Splits into lines, strips '#' comments and surrounding whitespace, drops blanks.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead]))) ++lead;
    auto body = trim(raw);
    if (!body.empty()) out.push_back({number, lead + 1, body});
  }
  return out;
}

std::optional<std::string_view> section_header(std::string_view line) {
  // headers are words like "vars" or "matrix 0"; matrix rows such as "[a, b]]" are not
  if (line.size() < 2 || line.front() != '[' || line.back() != ']') return std::nullopt;
  const std::string_view body = line.substr(1, line.size() - 2);
  const bool word = std::all_of(body.begin(), body.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ' ';
  });
  if (!word || trim(body).empty()) return std::nullopt;
  return trim(body);
}

std::uint64_t parse_natural(std::string_view s, const Line& where) {
  s = trim(s);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("expected a non-negative integer, got '" + std::string(s) + "'", where.number,
                     where.column);
  if (s.size() > 18) throw ParseError("integer too large", where.number, where.column);
  return std::stoull(std::string(s));
}

std::string format_coefficient_term(std::int64_t c, const std::string& body, bool first) {
  std::string out;
  if (first) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? " - " : " + ";
  }
  const std::int64_t a = c < 0 ? -c : c;
  if (a != 1) out += std::to_string(a) + "*";
  out += body;
  return out;
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Polynomial parse_expression(std::string_view text, const Resolver& resolve, std::size_t line,
                            std::size_t column) {
  return ExpressionParser(text, resolve, line, column).parse();
}

Resolver variable_resolver(const std::vector<std::string>& variables) {
  return [variables](std::string_view name) -> std::optional<LinearTerms> {
    for (std::size_t k = 0; k < variables.size(); ++k)
      if (variables[k] == name) return LinearTerms{{k, 1}};
    return std::nullopt;
  };
}

std::optional<std::size_t> Presentation::find_variable(std::string_view name) const {
  for (std::size_t k = 0; k < variables.size(); ++k)
    if (variables[k] == name) return k;
  return std::nullopt;
}

std::vector<Quadric> Presentation::other_quadrics() const {
  std::vector<Quadric> out;
  for (std::size_t k = 0; k < quadrics.size(); ++k)
    if (!distinguished || *distinguished != k) out.push_back(quadrics[k]);
  return out;
}

std::size_t monomial_count(std::size_t n) { return n * (n + 1) / 2; }

std::size_t monomial_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i > j) std::swap(i, j);
  // rows 0..i-1 contribute n, n-1, ..., n-i+1 monomials
  return i * n - i * (i - 1) / 2 + (j - i);
}

Vector quadric_vector(const QuadricTerms& q, std::size_t n, const PrimeField& field) {
  Vector v(monomial_count(n), 0);
  for (const auto& [key, c] : q) {
    auto& slot = v[monomial_index(key.first, key.second, n)];
    slot = field.add(slot, field.reduce(c));
  }
  return v;
}

void validate_presentation(const Presentation& p, const PrimeField& field) {
  const std::size_t n = p.variables.size();
  for (std::size_t k = 0; k < p.quadrics.size(); ++k) {
    for (const auto& [key, c] : p.quadrics[k].terms)
      if (key.first > key.second || key.second >= n)
        throw ValidationError("quadric " + std::to_string(k + 1) + " references an unknown variable");
    const Vector v = quadric_vector(p.quadrics[k].terms, n, field);
    if (std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; }))
      throw ValidationError("quadric " + std::to_string(k + 1) + " is zero modulo " +
                            std::to_string(field.modulus()));
  }
  if (p.distinguished) {
    if (*p.distinguished >= p.quadrics.size())
      throw ValidationError("distinguished index " + std::to_string(*p.distinguished + 1) +
                            " is out of range");
    const auto others = p.other_quadrics();
    const std::size_t cols = monomial_count(n);
    Matrix with_f(field, others.size() + 1, cols);
    for (std::size_t r = 0; r < others.size(); ++r) {
      const Vector v = quadric_vector(others[r].terms, n, field);
      for (std::size_t c = 0; c < cols; ++c) with_f(r, c) = v[c];
    }
    Matrix without_f(field, others.size(), cols,
                     std::vector<Residue>(with_f.data().begin(), with_f.data().begin() + others.size() * cols));
    const Vector f = quadric_vector(p.quadrics[*p.distinguished].terms, n, field);
    for (std::size_t c = 0; c < cols; ++c) with_f(others.size(), c) = f[c];
    if (rank(with_f) == rank(without_f))
      throw ValidationError(
          "distinguished quadric lies in the span of the other quadrics; it must be a minimal "
          "generator");
  }
}

Presentation parse_ring_file(std::string_view text) {
  Presentation p;
  enum class Section { none, field, vars, quadrics, distinguished } section = Section::none;
  bool seen_vars = false;
  std::optional<Line> distinguished_line;
  const auto lines = content_lines(text);
  for (const auto& line : lines) {
    if (auto header = section_header(line.text)) {
      if (*header == "field") section = Section::field;
      else if (*header == "vars") { section = Section::vars; seen_vars = true; }
      else if (*header == "quadrics") section = Section::quadrics;
      else if (*header == "distinguished") section = Section::distinguished;
      else throw ParseError("unknown section [" + std::string(*header) + "]", line.number, line.column);
      continue;
    }
    switch (section) {
      case Section::none:
        throw ParseError("content outside of a section", line.number, line.column);
      case Section::field: {
        const auto eq = line.text.find('=');
        if (eq == std::string_view::npos || trim(line.text.substr(0, eq)) != "p")
          throw ParseError("expected 'p = <prime>'", line.number, line.column);
        const auto value = parse_natural(line.text.substr(eq + 1), line);
        if (value >= (1ull << 31)) throw ParseError("prime too large", line.number, line.column);
        p.prime = static_cast<std::uint32_t>(value);
        PrimeField check(*p.prime);
        (void)check;
        break;
      }
      case Section::vars: {
        std::string buf(line.text);
        std::replace(buf.begin(), buf.end(), ',', ' ');
        std::istringstream in(buf);
        std::string name;
        while (in >> name) {
          if (!is_identifier(name))
            throw ParseError("invalid variable name '" + name + "'", line.number, line.column);
          if (p.find_variable(name))
            throw ParseError("duplicate variable '" + name + "'", line.number, line.column);
          p.variables.push_back(name);
        }
        break;
      }
      case Section::quadrics: {
        if (!seen_vars) throw ParseError("[quadrics] before [vars]", line.number, line.column);
        const auto poly = parse_expression(line.text, variable_resolver(p.variables), line.number,
                                           line.column);
        if (poly.constant != 0 || !poly.linear.empty())
          throw ParseError("quadric is not homogeneous of degree 2", line.number, line.column);
        if (poly.quadratic.empty()) throw ParseError("quadric is zero", line.number, line.column);
        p.quadrics.push_back({poly.quadratic});
        break;
      }
      case Section::distinguished:
        if (distinguished_line) throw ParseError("more than one distinguished quadric", line.number, line.column);
        distinguished_line = line;
        break;
    }
  }
  if (distinguished_line) {
    const auto& line = *distinguished_line;
    const bool numeric = std::all_of(line.text.begin(), line.text.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (numeric) {
      const auto k = parse_natural(line.text, line);
      if (k == 0 || k > p.quadrics.size())
        throw ParseError("distinguished index " + std::to_string(k) + " out of range", line.number,
                         line.column);
      p.distinguished = static_cast<std::size_t>(k - 1);
    } else {
      const auto poly = parse_expression(line.text, variable_resolver(p.variables), line.number,
                                         line.column);
      if (poly.constant != 0 || !poly.linear.empty() || poly.quadratic.empty())
        throw ParseError("distinguished element is not a nonzero quadric", line.number, line.column);
      const Quadric q{poly.quadratic};
      auto it = std::find(p.quadrics.begin(), p.quadrics.end(), q);
      if (it == p.quadrics.end()) {
        p.quadrics.push_back(q);
        p.distinguished = p.quadrics.size() - 1;
      } else {
        p.distinguished = static_cast<std::size_t>(it - p.quadrics.begin());
      }
    }
  }
  return p;
}

BipartiteGraph parse_graph_file(std::string_view text) {
  BipartiteGraph g;
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("missing header 'n m'", 1, 1);
  {
    std::istringstream in{std::string(lines[0].text)};
    long long n = -1, m = -1;
    std::string extra;
    if (!(in >> n >> m) || (in >> extra) || n < 0 || m < 0)
      throw ParseError("malformed header, expected 'n m'", lines[0].number, lines[0].column);
    g.x_count = static_cast<std::size_t>(n);
    g.y_count = static_cast<std::size_t>(m);
  }
  auto vertex = [](const std::string& tok, char side, const Line& line, std::size_t limit) {
    if (tok.size() < 2 || tok[0] != side ||
        !std::all_of(tok.begin() + 1, tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError(std::string("malformed vertex '") + tok + "', expected " + side + "<index>",
                       line.number, line.column);
    const auto k = std::stoull(tok.substr(1));
    if (k == 0 || k > limit)
      throw ParseError("vertex " + tok + " out of range (1.." + std::to_string(limit) + ")",
                       line.number, line.column);
    return static_cast<std::size_t>(k);
  };
  for (std::size_t k = 1; k < lines.size(); ++k) {
    std::istringstream in{std::string(lines[k].text)};
    std::string a, b, extra;
    if (!(in >> a >> b) || (in >> extra))
      throw ParseError("malformed edge line, expected 'x<i> y<j>'", lines[k].number, lines[k].column);
    const auto i = vertex(a, 'x', lines[k], g.x_count);
    const auto j = vertex(b, 'y', lines[k], g.y_count);
    if (!g.edges.insert({i, j}).second)
      throw ParseError("duplicate edge " + a + " " + b, lines[k].number, lines[k].column);
  }
  return g;
}

namespace {

std::vector<std::vector<std::string>> parse_matrix_text(const std::string& text, const Line& where) {
  // [[e, e], [e, e]]; entries contain no brackets or commas.
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> void {
    throw ParseError("matrix: " + what, where.number, where.column);
  };
  skip();
  if (pos >= text.size() || text[pos] != '[') fail("expected '['");
  ++pos;
  skip();
  if (pos < text.size() && text[pos] == ']') {
    ++pos;
    skip();
    if (pos != text.size()) fail("trailing characters");
    return rows;
  }
  for (;;) {
    skip();
    if (pos >= text.size() || text[pos] != '[') fail("expected '[' opening a row");
    const auto close = text.find(']', pos);
    if (close == std::string::npos) fail("unterminated row");
    const std::string body = text.substr(pos + 1, close - pos - 1);
    if (body.find('[') != std::string::npos) fail("nested '[' inside a row");
    std::vector<std::string> row;
    std::size_t start = 0;
    for (;;) {
      const auto comma = body.find(',', start);
      auto entry = trim(std::string_view(body).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (entry.empty()) fail("empty entry");
      row.emplace_back(entry);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && rows.front().size() != row.size()) fail("rows have different lengths");
    rows.push_back(std::move(row));
    pos = close + 1;
    skip();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
      break;
    }
    fail("expected ',' or ']'");
  }
  skip();
  if (pos != text.size()) fail("trailing characters");
  return rows;
}

}  // namespace

std::vector<std::vector<std::string>> parse_matrix_entries(std::string_view text, std::size_t line) {
  return parse_matrix_text(std::string(text), Line{line, 1, text});
}

ComplexFile parse_complex_file(std::string_view text) {
  ComplexFile c;
  enum class Section { none, ring, period, matrix } section = Section::none;
  std::map<std::size_t, std::pair<Line, std::string>> matrix_text;
  std::size_t current = 0;
  bool have_period = false;
  std::map<std::string, LinearTerms> alias_forms;
  std::map<std::string, std::size_t> symbols;
  // Syntax-checking resolver: unknown names become fresh symbols, aliases expand.
  Resolver permissive = [&](std::string_view name) -> std::optional<LinearTerms> {
    if (auto it = alias_forms.find(std::string(name)); it != alias_forms.end()) return it->second;
    auto [it, inserted] = symbols.try_emplace(std::string(name), symbols.size());
    return LinearTerms{{it->second, 1}};
  };
  for (const auto& line : content_lines(text)) {
    if (auto header = section_header(line.text)) {
      if (*header == "ring") section = Section::ring;
      else if (*header == "period") section = Section::period;
      else if (header->substr(0, 7) == "matrix ") {
        current = parse_natural(header->substr(7), line);
        if (matrix_text.count(current))
          throw ParseError("duplicate [matrix " + std::to_string(current) + "]", line.number, line.column);
        matrix_text[current] = {line, ""};
        section = Section::matrix;
      } else {
        throw ParseError("unknown section [" + std::string(*header) + "]", line.number, line.column);
      }
      continue;
    }
    if (line.text.substr(0, 4) == "let " || line.text.substr(0, 4) == "let\t") {
      const auto eq = line.text.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'let name = expression'", line.number, line.column);
      const std::string name(trim(line.text.substr(4, eq - 4)));
      if (!is_identifier(name)) throw ParseError("invalid alias name '" + name + "'", line.number, line.column);
      const std::string expr(trim(line.text.substr(eq + 1)));
      const auto poly = parse_expression(expr, permissive, line.number, line.column + eq + 1);
      if (poly.constant != 0 || !poly.quadratic.empty())
        throw ParseError("alias '" + name + "' is not a linear form", line.number, line.column);
      alias_forms[name] = poly.linear;
      c.aliases.emplace_back(name, expr);
      continue;
    }
    switch (section) {
      case Section::none:
        throw ParseError("content outside of a section", line.number, line.column);
      case Section::ring:
        if (!c.ring.empty()) throw ParseError("more than one ring reference", line.number, line.column);
        c.ring = std::string(line.text);
        break;
      case Section::period:
        if (have_period) throw ParseError("more than one period", line.number, line.column);
        c.period = parse_natural(line.text, line);
        have_period = true;
        break;
      case Section::matrix:
        matrix_text[current].second += std::string(line.text) + " ";
        break;
    }
  }
  if (c.ring.empty()) throw ParseError("missing [ring] section");
  if (!have_period || c.period == 0) throw ParseError("missing or zero [period]");
  for (std::size_t k = 0; k < c.period; ++k) {
    auto it = matrix_text.find(k);
    if (it == matrix_text.end()) throw ParseError("missing [matrix " + std::to_string(k) + "]");
    const auto& [where, body] = it->second;
    auto rows = parse_matrix_text(body, where);
    for (const auto& row : rows)
      for (const auto& entry : row) {
        const auto poly = parse_expression(entry, permissive, where.number + 1, 1);
        if (poly.constant != 0 || !poly.quadratic.empty())
          throw ParseError("matrix entry '" + entry + "' is not a linear form", where.number + 1, 1);
      }
    c.matrices.push_back(std::move(rows));
  }
  if (matrix_text.size() != c.period)
    throw ParseError("matrix index outside the period");
  // Cyclic chaining: target of map k is the source of map k-1.
  for (std::size_t k = 0; k < c.period; ++k) {
    const auto& m = c.matrices[k];
    const auto& prev = c.matrices[(k + c.period - 1) % c.period];
    const std::size_t rows = m.size();
    const std::size_t prev_cols = prev.empty() ? 0 : prev.front().size();
    if (rows != prev_cols)
      throw ShapeError("shape mismatch: matrix " + std::to_string(k) + " has " + std::to_string(rows) +
                       " rows but matrix " + std::to_string((k + c.period - 1) % c.period) + " has " +
                       std::to_string(prev_cols) + " columns");
  }
  return c;
}

std::string format_linear(const std::vector<std::string>& names, const LinearTerms& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms) {
    out += format_coefficient_term(c, names.at(k), first);
    first = false;
  }
  return out;
}

std::string format_quadric(const std::vector<std::string>& names, const QuadricTerms& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : terms) {
    const std::string body = key.first == key.second ? names.at(key.first) + "^2"
                                                     : names.at(key.first) + "*" + names.at(key.second);
    out += format_coefficient_term(c, body, first);
    first = false;
  }
  return out;
}

std::string to_ring_text(const Presentation& p) {
  std::ostringstream out;
  if (p.prime) out << "[field]\np = " << *p.prime << "\n";
  out << "[vars]\n";
  for (std::size_t k = 0; k < p.variables.size(); ++k) out << (k ? ", " : "") << p.variables[k];
  out << "\n[quadrics]\n";
  for (const auto& q : p.quadrics) out << format_quadric(p.variables, q.terms) << "\n";
  if (p.distinguished)
    out << "[distinguished]\n" << format_quadric(p.variables, p.quadrics[*p.distinguished].terms) << "\n";
  return out.str();
}

std::string to_graph_text(const BipartiteGraph& g) {
  std::ostringstream out;
  out << g.x_count << " " << g.y_count << "\n";
  for (auto [i, j] : g.edges) out << "x" << i << " y" << j << "\n";
  return out.str();
}

std::string to_complex_text(const ComplexFile& c) {
  std::ostringstream out;
  out << "[ring]\n" << c.ring << "\n[period]\n" << c.period << "\n";
  for (const auto& [name, expr] : c.aliases) out << "let " << name << " = " << expr << "\n";
  for (std::size_t k = 0; k < c.matrices.size(); ++k) {
    out << "[matrix " << k << "]\n[";
    const auto& m = c.matrices[k];
    for (std::size_t r = 0; r < m.size(); ++r) {
      out << (r ? ",\n [" : "[");
      for (std::size_t s = 0; s < m[r].size(); ++s) out << (s ? ", " : "") << m[r][s];
      out << "]";
    }
    out << "]\n";
  }
  return out.str();
}

Presentation rename_variables(const Presentation& p, const std::map<std::string, std::string>& names) {
  Presentation out = p;
  for (auto& v : out.variables) {
    auto it = names.find(v);
    if (it == names.end()) throw ValidationError("no new name given for variable '" + v + "'");
    if (!is_identifier(it->second)) throw ValidationError("invalid variable name '" + it->second + "'");
    v = it->second;
  }
  std::set<std::string> seen(out.variables.begin(), out.variables.end());
  if (seen.size() != out.variables.size()) throw ValidationError("renaming produces duplicate variables");
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tacx
