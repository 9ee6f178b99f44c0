#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tacx/linalg.hpp"

namespace tacx {

/// Coefficients are kept as the integers written in the source. They are
/// reduced into a field only when an algebra is built, so one presentation can
/// be evaluated over several primes.
using LinearTerms = std::map<std::size_t, std::int64_t>;
/// Keys are (i, j) with i <= j, meaning x_i * x_j.
using QuadricTerms = std::map<std::pair<std::size_t, std::size_t>, std::int64_t>;

struct Polynomial {
  std::int64_t constant = 0;
  LinearTerms linear;
  QuadricTerms quadratic;

  bool operator==(const Polynomial&) const = default;
};

struct Quadric {
  QuadricTerms terms;

  bool operator==(const Quadric&) const = default;
};

struct Presentation {
  std::vector<std::string> variables;
  std::vector<Quadric> quadrics;
  /// Index into quadrics of the distinguished element f.
  std::optional<std::size_t> distinguished;
  /// Modulus declared in a [field] section, if any.
  std::optional<std::uint32_t> prime;

  std::optional<std::size_t> find_variable(std::string_view name) const;
  /// Quadrics other than the distinguished one.
  std::vector<Quadric> other_quadrics() const;

  bool operator==(const Presentation&) const = default;
};

struct BipartiteGraph {
  std::size_t x_count = 0;
  std::size_t y_count = 0;
  /// 1-based (x index, y index) pairs.
  std::set<std::pair<std::size_t, std::size_t>> edges;

  bool operator==(const BipartiteGraph&) const = default;
};

/// Syntactic content of a .cx file; names are resolved against the ring later.
struct ComplexFile {
  std::string ring;
  std::size_t period = 0;
  std::vector<std::pair<std::string, std::string>> aliases;
  /// matrices[k][row][col] is the entry expression text of map k.
  std::vector<std::vector<std::vector<std::string>>> matrices;

  bool operator==(const ComplexFile&) const = default;
};

/// Maps an identifier to a linear form, or nullopt if unknown.
using Resolver = std::function<std::optional<LinearTerms>(std::string_view)>;

/// expression ::= term (('+'|'-') term)*
/// term       ::= [integer '*'] factor ('*' factor | '^' integer)?
/// Degree above two is a ParseError. line/column locate text in its file.
Polynomial parse_expression(std::string_view text, const Resolver& resolve, std::size_t line = 1,
                            std::size_t column = 1);

/// Resolver over a presentation's variables.
Resolver variable_resolver(const std::vector<std::string>& variables);

Presentation parse_ring_file(std::string_view text);
BipartiteGraph parse_graph_file(std::string_view text);
ComplexFile parse_complex_file(std::string_view text);

/// Splits "[[a, b], [c, d]]" into entry texts. An empty "[]" gives no rows.
std::vector<std::vector<std::string>> parse_matrix_entries(std::string_view text,
                                                           std::size_t line = 1);

std::string to_ring_text(const Presentation& p);
std::string to_graph_text(const BipartiteGraph& g);
std::string to_complex_text(const ComplexFile& c);

std::string format_linear(const std::vector<std::string>& names, const LinearTerms& terms);
std::string format_quadric(const std::vector<std::string>& names, const QuadricTerms& terms);

/// Checks the field-dependent invariants: quadrics nonzero mod p and the
/// distinguished quadric outside the span of the others. Throws ValidationError.
void validate_presentation(const Presentation& p, const PrimeField& field);

/// Coefficient vector over the degree-2 monomials (lex order on (i, j), i <= j).
Vector quadric_vector(const QuadricTerms& q, std::size_t n, const PrimeField& field);
std::size_t monomial_index(std::size_t i, std::size_t j, std::size_t n);
std::size_t monomial_count(std::size_t n);

/// Renames variables; every old name must appear in the map.
Presentation rename_variables(const Presentation& p,
                              const std::map<std::string, std::string>& names);

std::string read_text_file(const std::string& path);
bool is_identifier(std::string_view s);

}  // namespace tacx
