#include "tacx/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "tacx/connected_sum.hpp"
#include "tacx/doubling.hpp"
#include "tacx/error.hpp"
#include "tacx/ezd.hpp"
#include "tacx/graph_ring.hpp"
#include "tacx/report.hpp"

namespace tacx {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::optional<std::uint32_t> prime;
  std::optional<std::uint32_t> proxy_prime;
  std::string report_path;
  std::string output;
  std::uint64_t seed = 1;
  bool auto_sign = true;
  std::size_t window = 8;
  std::optional<std::int64_t> alpha;
  bool search = false;
  bool exhaustive = false;
  std::size_t trials = 1000;
  bool force_budget = false;
  unsigned threads = 0;

  std::vector<std::string> inputs;
  std::string mode;
  std::string ring;
  std::string x, w, a, b, dec;
  std::vector<std::string> lets;
};

struct Outcome {
  std::string command;
  std::uint32_t prime = PrimeField::kDefaultPrime;
  std::vector<std::string> hashed;
  Json body = Json::object();
  Json checks = Json::object();
  std::string message;
};

std::optional<std::uint32_t> env_prime() {
  const char* v = std::getenv("TACX_PRIME");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long p = std::strtoull(v, &end, 10);
  if (*end || p > 0xffffffffULL) throw ConfigError(std::string("TACX_PRIME is not a number: ") + v);
  return static_cast<std::uint32_t>(p);
}

// --prime, then the ring file's [field], then TACX_PRIME, then the default.
PrimeField choose_field(const Options& o, std::optional<std::uint32_t> from_file) {
  if (o.prime) return PrimeField(*o.prime);
  if (from_file) return PrimeField(*from_file);
  if (auto e = env_prime()) return PrimeField(*e);
  return PrimeField();
}

Presentation load_ring(const std::string& path) { return parse_ring_file(read_text_file(path)); }

std::string ring_of_complex(const std::string& cx_path) {
  const ComplexFile file = parse_complex_file(read_text_file(cx_path));
  return (fs::path(cx_path).parent_path() / file.ring).string();
}

LoadedComplex load_cx(const Options& o, const std::string& path) {
  const std::string ring_path = ring_of_complex(path);
  if (!fs::exists(ring_path)) throw ValidationError("unknown ring reference '" + ring_path + "'");
  const Presentation p = load_ring(ring_path);
  const PrimeField field = choose_field(o, p.prime);
  validate_presentation(p, field);
  return load_complex(path, field.modulus());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

// Ring reference of a .cx file written at cx_path.
std::string ring_reference(const std::string& cx_path, const std::string& ring_path) {
  const fs::path base = fs::absolute(cx_path).parent_path();
  return fs::relative(fs::absolute(ring_path), base).generic_string();
}

std::vector<std::pair<std::string, std::string>> parse_lets(const std::vector<std::string>& lets) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& l : lets) {
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw ParseError("--let expects name=expression");
    std::string name = l.substr(0, eq);
    std::erase_if(name, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!is_identifier(name)) throw ParseError("invalid alias name '" + name + "'");
    out.emplace_back(name, l.substr(eq + 1));
  }
  return out;
}

Json yoshino_json(const ShortAlgebra& alg) {
  const auto y = yoshino_check(alg);
  return {{"dim1", y.dim1}, {"dim2", y.dim2}, {"quadric_defined", y.quadric_defined},
          {"dim_condition", y.dim_condition}};
}

Json acyclicity_json(const PeriodicComplex& c, bool& complex_ok, bool& acyclic) {
  const AcyclicityReport r = check_total_acyclicity(c);
  complex_ok = r.complex;
  acyclic = r.totally_acyclic;
  Json j;
  j["period"] = c.period();
  Json ranks = Json::array();
  for (const auto& m : c.maps()) ranks.push_back(m.cols());
  j["ranks"] = ranks;
  j["is_complex"] = r.complex;
  j["exact_at"] = bools_json(r.exact_at);
  j["dual_exact_at"] = bools_json(r.dual_exact_at);
  j["totally_acyclic"] = r.totally_acyclic;
  return j;
}

Json complex_json(const PeriodicComplex& c) {
  Json maps = Json::array();
  for (const auto& m : c.maps()) maps.push_back(matrix_json(m));
  return maps;
}

// ------------------------------------------------------------------ commands

Outcome ring_info(const Options& o) {
  Outcome out;
  out.command = "ring info";
  const std::string& path = o.inputs.at(0);
  const Presentation p = load_ring(path);
  const PrimeField field = choose_field(o, p.prime);
  validate_presentation(p, field);
  out.prime = field.modulus();
  out.hashed = {path};
  const AlgebraPtr alg = make_algebra(p, field);
  const bool faithful = verify_truncation(p, field);
  const auto y = yoshino_check(*alg);
  Json& j = out.body;
  j["variables"] = p.variables;
  j["quadrics"] = p.quadrics.size();
  j["dim1"] = alg->dim1();
  j["dim2"] = alg->dim2();
  j["socle_dim"] = socle_dimension(*alg);
  j["gorenstein"] = is_gorenstein(*alg);
  j["yoshino"] = yoshino_json(*alg);
  j["yoshino_b"] = y.dim_condition;
  j["koszul"] = "unchecked";
  j["truncation_faithful"] = faithful;
  if (p.distinguished) {
    const LiftedRing lr = make_lifted_ring(p, field);
    j["distinguished"] = format_quadric(p.variables, p.quadrics[*p.distinguished].terms);
    j["cover"] = {{"dim1", lr.cover->dim1()},
                  {"dim2", lr.cover->dim2()},
                  {"gorenstein", is_gorenstein(*lr.cover)},
                  {"truncation_faithful", verify_truncation(without_distinguished(p), field)}};
  }
  out.checks["truncation_faithful"] = faithful;
  out.checks["yoshino_b"] = y.dim_condition;
  if (!y.dim_condition) out.message = "dim2 != dim1 - 1: no minimal totally acyclic complexes";
  return out;
}

Outcome ezd_verify(const Options& o) {
  Outcome out;
  out.command = "ezd verify";
  const std::string& path = o.inputs.at(0);
  const Presentation p = load_ring(path);
  const PrimeField field = choose_field(o, p.prime);
  validate_presentation(p, field);
  out.prime = field.modulus();
  out.hashed = {path};
  if (o.a.empty() || o.b.empty()) throw ConfigError("ezd verify needs --a and --b");
  const AlgebraPtr alg = make_algebra(p, field);
  const auto aliases = parse_lets(o.lets);
  const Vector a = parse_linear_form(o.a, alg, aliases), b = parse_linear_form(o.b, alg, aliases);
  const EzdVerdict v = verify_ezd_detail(*alg, a, b);
  out.body["a"] = format_form(*alg, a);
  out.body["b"] = format_form(*alg, b);
  out.body["exact_zero_divisors"] = v.exact_zero_divisors;
  if (!v.diagnostic.empty()) out.body["diagnostic"] = v.diagnostic;
  out.checks["exact_zero_divisors"] = v.exact_zero_divisors;
  if (v.exact_zero_divisors) {
    bool complex_ok = false, acyclic = false;
    out.body["complex"] = acyclicity_json(ezd_complex(alg, a, b), complex_ok, acyclic);
    out.checks["totally_acyclic"] = acyclic;
  } else {
    out.message = v.diagnostic;
  }
  return out;
}

Outcome ezd_search(const Options& o) {
  Outcome out;
  out.command = "ezd search";
  const std::string& path = o.inputs.at(0);
  const Presentation p = load_ring(path);
  const PrimeField field = o.proxy_prime ? PrimeField(*o.proxy_prime) : choose_field(o, p.prime);
  validate_presentation(p, field);
  out.prime = field.modulus();
  out.hashed = {path};
  const AlgebraPtr alg = make_algebra(p, field);
  Json& j = out.body;
  j["field"] = field.modulus();
  j["proxy"] = o.proxy_prime.has_value();
  std::vector<EzdPair> pairs;
  if (o.exhaustive) {
    j["mode"] = "exhaustive";
    j["candidates"] = candidate_count(field.modulus(), alg->dim1());
    pairs = search_ezd_exhaustive(*alg, {10'000'000, o.force_budget, o.threads});
  } else {
    j["mode"] = "random";
    j["trials"] = o.trials;
    j["seed"] = o.seed;
    if (auto pair = search_ezd_random(*alg, o.trials, o.seed)) pairs.push_back(*pair);
  }
  Json list = Json::array();
  for (const auto& pair : pairs) list.push_back({{"a", format_form(*alg, pair.a)}, {"b", format_form(*alg, pair.b)}});
  j["pairs"] = list;
  j["count"] = pairs.size();
  out.checks["found"] = !pairs.empty();
  if (pairs.empty()) out.message = "no exact zero divisors found";
  return out;
}

ConnectedSum connected_sum_of(const Options& o, const Presentation& p1, const Presentation& p2, PrimeField& field) {
  field = choose_field(o, p1.prime ? p1.prime : p2.prime);
  return build_connected_sum(p1, p2, field);
}

Outcome csum_build(const Options& o) {
  Outcome out;
  out.command = "csum build";
  if (o.inputs.size() != 2) throw ConfigError("csum build needs two ring files");
  const Presentation p1 = load_ring(o.inputs[0]), p2 = load_ring(o.inputs[1]);
  PrimeField field;
  const ConnectedSum cs = connected_sum_of(o, p1, p2, field);
  out.prime = field.modulus();
  out.hashed = o.inputs;
  const ShortAlgebra& r = *cs.ring;
  Json& j = out.body;
  j["variables"] = cs.presentation.variables;
  j["quadrics"] = cs.presentation.quadrics.size();
  j["glue"] = format_quadric(cs.presentation.variables, cs.presentation.quadrics.back().terms);
  auto dims = [](const ShortAlgebra& a) { return Json{{"dim1", a.dim1()}, {"dim2", a.dim2()}}; };
  j["dims"] = {{"R", dims(r)},
               {"R0", dims(*cs.left.cover)},
               {"R1", dims(*cs.left.quotient)},
               {"S0", dims(*cs.right.cover)},
               {"S1", dims(*cs.right.quotient)}};
  j["delta"] = degree2_text(r, cs.delta);

  bool ab_zero = true;
  for (auto i : cs.a_variables)
    for (auto k : cs.b_variables)
      for (Residue x : r.reduce(i, k)) ab_zero = ab_zero && x == 0;
  bool socle = true;
  for (std::size_t k = 0; k < r.dim1(); ++k)
    socle = socle && multiply(r, r.quadratic(cs.delta), r.variable(k)).is_zero();
  const bool dims_ok = r.dim1() == cs.left.cover->dim1() + cs.right.cover->dim1() &&
                       r.dim2() + 1 == cs.left.cover->dim2() + cs.right.cover->dim2();
  const GorensteinCrosscheck g = gorenstein_crosscheck(cs);
  j["gorenstein"] = {{"R", g.gor_r}, {"R0", g.gor_r0}, {"S0", g.gor_s0}, {"R1", g.gor_r1}, {"S1", g.gor_s1},
                     {"consistent", g.consistent}};
  j["yoshino"] = yoshino_json(r);
  out.checks["ab_zero"] = ab_zero;
  out.checks["delta_nonzero"] = true;
  out.checks["delta_in_socle"] = socle;
  out.checks["dimension_formula"] = dims_ok;
  out.checks["gorenstein_consistent"] = g.consistent;
  if (!o.output.empty()) {
    write_text(o.output, to_ring_text(cs.presentation));
    j["written"] = o.output;
  }
  return out;
}

struct SidePair {
  ConnectedSum cs;
  PeriodicComplex a;
  PeriodicComplex b;
};

SidePair load_sides(const Options& o, Outcome& out) {
  if (o.inputs.size() != 2) throw ConfigError("expected two .cx files (x-side and y-side)");
  const std::string ra = ring_of_complex(o.inputs[0]), rb = ring_of_complex(o.inputs[1]);
  const Presentation p1 = load_ring(ra), p2 = load_ring(rb);
  PrimeField field;
  ConnectedSum cs = connected_sum_of(o, p1, p2, field);
  out.prime = field.modulus();
  out.hashed = {o.inputs[0], ra, o.inputs[1], rb};
  const LoadedComplex la = load_complex(o.inputs[0], field.modulus());
  const LoadedComplex lb = load_complex(o.inputs[1], field.modulus());
  auto rebound = [](const PeriodicComplex& c, const AlgebraPtr& alg) {
    std::vector<LinearMatrix> maps;
    for (const auto& m : c.maps()) maps.push_back(m.rebind(alg));
    return PeriodicComplex(std::move(maps));
  };
  PeriodicComplex a = rebound(la.complex, cs.left.quotient);
  PeriodicComplex b = rebound(lb.complex, cs.right.quotient);
  return {std::move(cs), std::move(a), std::move(b)};
}

Outcome csum_check(const Options& o) {
  Outcome out;
  out.command = "csum check";
  const SidePair s = load_sides(o, out);
  const MainResultCheck m = mainresult_crosscheck(s.cs, s.a, s.b, o.auto_sign);
  out.body = {{"auto_sign", o.auto_sign},
              {"lifting_condition_a", m.lifting_condition_a},
              {"lifting_condition_b", m.lifting_condition_b},
              {"complex_a", m.complex_a},
              {"complex_b", m.complex_b},
              {"exact_a", m.exact_a},
              {"exact_b", m.exact_b},
              {"exact_assembled", m.exact_assembled},
              {"totally_acyclic_assembled", m.totally_acyclic_assembled}};
  out.checks["hypothesis"] = m.hypothesis;
  out.checks["biconditional"] = m.biconditional;
  out.checks["necessity"] = m.necessity;
  if (!m.hypothesis) out.message = "lifting condition fails: hypothesis-violated example";
  return out;
}

Outcome complex_verify(const Options& o) {
  Outcome out;
  out.command = "complex verify";
  const LoadedComplex lc = load_cx(o, o.inputs.at(0));
  out.prime = lc.algebra->field().modulus();
  out.hashed = {o.inputs[0], lc.ring_path};
  bool complex_ok = false, acyclic = false;
  out.body = acyclicity_json(lc.complex, complex_ok, acyclic);
  out.body["maps"] = complex_json(lc.complex);
  out.body["yoshino"] = yoshino_json(*lc.algebra);
  if (lc.presentation.distinguished) {
    const LiftedRing lr = make_lifted_ring(lc.presentation, lc.algebra->field());
    std::vector<LinearMatrix> maps;
    for (const auto& m : lc.complex.maps()) maps.push_back(m.rebind(lr.quotient));
    const LiftingReport lift = lifting_condition(PeriodicComplex(maps), lr);
    out.body["lifting_condition"] = {{"holds", lift.holds}, {"per_map", bools_json(lift.per_map)}};
  }
  out.checks["complex"] = complex_ok;
  out.checks["totally_acyclic"] = acyclic;
  if (!complex_ok) out.message = "not a complex";
  else if (!acyclic) out.message = "not totally acyclic";
  return out;
}

Outcome complex_normalize(const Options& o) {
  Outcome out;
  out.command = "complex normalize";
  const LoadedComplex lc = load_cx(o, o.inputs.at(0));
  out.prime = lc.algebra->field().modulus();
  out.hashed = {o.inputs[0], lc.ring_path};
  const LiftedRing lr = make_lifted_ring(lc.presentation, lc.algebra->field());
  std::vector<LinearMatrix> maps;
  for (const auto& m : lc.complex.maps()) maps.push_back(m.rebind(lr.quotient));
  const NormalizedComplex n = normalize(PeriodicComplex(maps), lr, o.window);
  Json coeffs = Json::array();
  for (const auto& u : n.coefficients) coeffs.push_back(matrix_json(u));
  out.body["window"] = o.window;
  out.body["coefficients"] = coeffs;
  Json window = Json::array();
  for (const auto& m : n.window.maps()) window.push_back(matrix_json(m));
  out.body["maps"] = window;
  out.body["periodic"] = n.periodic.has_value();
  out.checks["normalized"] = true;
  if (!o.output.empty()) {
    if (!n.periodic) throw ConstructionError("normalized window is not periodic; nothing to write");
    write_text(o.output, to_complex_text(to_complex_file(*n.periodic, ring_reference(o.output, lc.ring_path))));
    out.body["written"] = o.output;
  }
  return out;
}

Outcome complex_assemble(const Options& o) {
  Outcome out;
  out.command = "complex assemble";
  const SidePair s = load_sides(o, out);
  const Assembly as = assemble(s.cs, s.a, s.b, o.auto_sign);
  bool complex_ok = false, acyclic = false;
  out.body["auto_sign"] = o.auto_sign;
  out.body["signs"] = as.signs;
  out.body["copies_a"] = as.copies_a;
  out.body["copies_b"] = as.copies_b;
  out.body["assembled"] = acyclicity_json(as.complex, complex_ok, acyclic);
  out.body["maps"] = complex_json(as.complex);
  out.checks["complex"] = complex_ok;
  out.checks["totally_acyclic"] = acyclic;
  if (!o.output.empty()) {
    const std::string ring_out = fs::path(o.output).replace_extension(".ring").string();
    write_text(ring_out, to_ring_text(s.cs.presentation));
    write_text(o.output, to_complex_text(to_complex_file(as.complex, ring_reference(o.output, ring_out))));
    out.body["written"] = {o.output, ring_out};
  }
  return out;
}

Outcome double_command(const Options& o) {
  const bool search = o.search || o.mode == "search";
  if (!o.mode.empty() && o.mode != "build" && o.mode != "search")
    throw ConfigError("double mode must be 'build' or 'search'");
  Outcome out;
  out.command = search ? "double search" : "double build";
  Presentation p;
  std::string ring_path;
  std::optional<LinearMatrix> x, w;
  PrimeField field;
  const auto aliases = parse_lets(o.lets);
  if (!o.inputs.empty()) {
    const LoadedComplex lc = load_cx(o, o.inputs[0]);
    if (lc.complex.period() != 2) throw ValidationError("doubling needs a period-2 complex");
    p = lc.presentation;
    ring_path = lc.ring_path;
    field = lc.algebra->field();
    x = lc.complex.maps()[0];
    w = lc.complex.maps()[1];
    out.hashed = {o.inputs[0], ring_path};
  } else {
    if (o.ring.empty() || o.x.empty() || o.w.empty())
      throw ConfigError("double needs a .cx file or --ring with --x and --w");
    ring_path = o.ring;
    p = load_ring(ring_path);
    field = choose_field(o, p.prime);
    validate_presentation(p, field);
    out.hashed = {ring_path};
  }
  out.prime = field.modulus();
  const LiftedRing lr = make_lifted_ring(p, field);
  if (!x) {
    x = parse_linear_matrix(o.x, lr.quotient, aliases);
    w = parse_linear_matrix(o.w, lr.quotient, aliases);
  }
  const SocleDecomposition dec =
      o.dec.empty() ? monomial_decomposition(p, lr) : parse_decomposition(o.dec, lr.cover);
  Json pairs = Json::array();
  for (const auto& [y, z] : dec.pairs) pairs.push_back({format_form(*lr.cover, y), format_form(*lr.cover, z)});
  out.body["decomposition"] = pairs;
  out.body["decomposition_source"] = o.dec.empty() ? "monomials of f" : "user";

  std::optional<DoubledPair> pair;
  DoublingCheck check;
  if (search) {
    if (auto found = search_alpha(*x, *w, dec, lr)) {
      pair = found->pair;
      check = found->check;
    } else {
      out.message = "no alpha in 1..p-1 passes; try a larger prime";
    }
  } else {
    pair = build_doubled(*x, *w, dec, field.reduce(o.alpha.value_or(1)), lr);
    check = verify_doubling(*pair, lr);
  }
  out.checks["composite_pattern"] = check.composite_pattern;
  out.checks["complex"] = check.complex;
  out.checks["totally_acyclic"] = check.totally_acyclic;
  out.checks["lifting_condition"] = check.lifting_condition;
  if (pair) {
    out.body["alpha"] = field.signed_value(pair->alpha);
    out.body["v"] = pair->v;
    out.body["levels"] = pair->levels;
    out.body["size"] = pair->a.rows();
    const PeriodicComplex c = doubled_complex(*pair, lr);
    out.body["maps"] = complex_json(c);
    if (!o.output.empty()) {
      write_text(o.output, to_complex_text(to_complex_file(c, ring_reference(o.output, ring_path))));
      out.body["written"] = o.output;
    }
  }
  return out;
}

Outcome graph_import(const Options& o) {
  Outcome out;
  out.command = "graph import";
  const std::string& path = o.inputs.at(0);
  const BipartiteGraph g = parse_graph_file(read_text_file(path));
  const PrimeField field = choose_field(o, std::nullopt);
  out.prime = field.modulus();
  out.hashed = {path};
  const GraphRingData data = build_from_graph(g, field);
  const ShortAlgebra& alg = *data.algebra;
  Json& j = out.body;
  j["variables"] = data.presentation.variables;
  j["quadrics"] = data.presentation.quadrics.size();
  j["component_a"] = data.component_a;
  j["component_b"] = data.component_b;
  j["f_a"] = format_form(alg, data.f_a);
  j["f_b"] = format_form(alg, data.f_b);
  j["g_a"] = format_form(alg, data.g_a);
  j["g_b"] = format_form(alg, data.g_b);
  j["delta"] = degree2_text(alg, data.delta);
  j["dim1"] = alg.dim1();
  j["dim2"] = alg.dim2();
  j["yoshino"] = yoshino_json(alg);
  out.checks["truncation_faithful"] = data.truncation_faithful;
  out.checks["fg_zero"] = data.fg_zero;
  out.checks["delta_symmetric"] = data.delta_symmetric;
  out.checks["delta_nonzero"] = data.delta_nonzero;
  out.checks["ab_zero"] = data.ab_zero;
  out.checks["intersection_dim_one"] = data.intersection_dim == 1;
  j["intersection_dim"] = data.intersection_dim;
  if (o.exhaustive) {
    const PrimeField proxy(o.proxy_prime.value_or(field.modulus()));
    const AlgebraPtr small = make_algebra(data.presentation, proxy);
    const bool none = no_ezd_spotcheck(*small, {10'000'000, o.force_budget, o.threads});
    j["spotcheck_field"] = proxy.modulus();
    out.checks["no_exact_zero_divisors"] = none;
  }
  if (!o.output.empty()) {
    write_text(o.output, to_ring_text(data.presentation));
    j["written"] = o.output;
  }
  return out;
}

// ---------------------------------------------------------------------- run

bool all_true(const Json& checks) {
  for (const auto& [k, v] : checks.items())
    if (!v.get<bool>()) return false;
  return true;
}

Json full_report(const Outcome& o) {
  Json r = report_header(o.command, o.prime, o.hashed);
  r["result"] = o.body;
  r["checks"] = o.checks;
  r["ok"] = all_true(o.checks);
  if (!o.message.empty()) r["message"] = o.message;
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"tacx: short graded algebras, connected sums and totally acyclic complexes", "tacx"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--prime", o.prime, "Odd prime for the coefficient field (overrides TACX_PRIME)");
  app.add_option("--out", o.report_path, "Write the JSON report to FILE");

  std::function<Outcome(const Options&)> handler;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<Outcome(const Options&)> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->callback([&handler, fn] { handler = fn; });
    return sub;
  };
  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "Output file"); };

  CLI::App* ring = app.add_subcommand("ring", "Ring inspection");
  ring->require_subcommand(1);
  auto* info = leaf(ring, "info", "Dimensions, socle, Gorenstein and Yoshino checks", ring_info);
  info->add_option("ring", o.inputs, "Ring file")->required()->expected(1);

  CLI::App* ezd = app.add_subcommand("ezd", "Exact zero divisors");
  ezd->require_subcommand(1);
  auto* verify = leaf(ezd, "verify", "Verify a pair of linear forms", ezd_verify);
  verify->add_option("ring", o.inputs, "Ring file")->required()->expected(1);
  verify->add_option("--a", o.a, "First linear form")->required();
  verify->add_option("--b", o.b, "Second linear form")->required();
  verify->add_option("--let", o.lets, "Alias name=expression");
  auto* search = leaf(ezd, "search", "Search for linear exact zero divisors", ezd_search);
  search->add_option("ring", o.inputs, "Ring file")->required()->expected(1);
  search->add_flag("--exhaustive", o.exhaustive, "Enumerate every projective candidate");
  search->add_option("--trials", o.trials, "Random trials")->check(CLI::PositiveNumber);
  search->add_option("--seed", o.seed, "Random seed");
  search->add_option("--proxy-prime", o.proxy_prime, "Search over this field instead");
  search->add_flag("--force-budget", o.force_budget, "Ignore the enumeration budget");
  search->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  CLI::App* csum = app.add_subcommand("csum", "Connected sums");
  csum->require_subcommand(1);
  auto* build = leaf(csum, "build", "Build the connected sum of two rings", csum_build);
  build->add_option("rings", o.inputs, "Two ring files")->required()->expected(2);
  add_output(build);
  auto* check = leaf(csum, "check", "Cross-check exactness of an assembly against its factors", csum_check);
  check->add_option("complexes", o.inputs, "x-side and y-side .cx files")->required()->expected(2);
  check->add_flag("--auto-sign,!--no-auto-sign", o.auto_sign, "Alternate y-side signs when the plain sum does not cancel");

  CLI::App* cx = app.add_subcommand("complex", "Complexes of linear matrices");
  cx->require_subcommand(1);
  auto* cverify = leaf(cx, "verify", "Complex, exactness and total acyclicity", complex_verify);
  cverify->add_option("complex", o.inputs, ".cx file")->required()->expected(1);
  auto* normal = leaf(cx, "normalize", "Rebase lifts so adjacent composites are f·I", complex_normalize);
  normal->add_option("complex", o.inputs, ".cx file")->required()->expected(1);
  normal->add_option("--window", o.window, "Window length")->check(CLI::PositiveNumber);
  add_output(normal);
  auto* assemble_cmd = leaf(cx, "assemble", "Assemble factor complexes over the connected sum", complex_assemble);
  assemble_cmd->add_option("complexes", o.inputs, "x-side and y-side .cx files")->required()->expected(2);
  assemble_cmd->add_flag("--auto-sign,!--no-auto-sign", o.auto_sign, "Alternate y-side signs when the plain sum does not cancel");
  add_output(assemble_cmd);

  CLI::App* dbl = leaf(&app, "double", "Doubling construction for period-2 complexes", double_command);
  dbl->add_option("mode", o.mode, "build (default) or search");
  dbl->add_option("--cx", o.inputs, "Period-2 .cx file")->expected(1);
  dbl->add_option("--ring", o.ring, "Ring file with distinguished quadric");
  dbl->add_option("--x", o.x, "First matrix");
  dbl->add_option("--w", o.w, "Second matrix");
  dbl->add_option("--let", o.lets, "Alias name=expression");
  dbl->add_option("--dec", o.dec, "Decomposition of f, e.g. \"(x1, y1)\"");
  dbl->add_option("--alpha", o.alpha, "Parameter alpha");
  dbl->add_flag("--search", o.search, "Search alpha = 1, 2, ...");
  add_output(dbl);

  CLI::App* graph = app.add_subcommand("graph", "Bipartite graph rings");
  graph->require_subcommand(1);
  auto* import = leaf(graph, "import", "Build the ring of a bipartite graph", graph_import);
  import->add_option("graph", o.inputs, "Graph file")->required()->expected(1);
  import->add_flag("--exhaustive", o.exhaustive, "Exhaustive exact zero divisor spot-check");
  import->add_option("--proxy-prime", o.proxy_prime, "Field for the spot-check");
  import->add_flag("--force-budget", o.force_budget, "Ignore the enumeration budget");
  import->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  add_output(import);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }
  if (!handler) {
    err << app.help();
    return 2;
  }

  Outcome result;
  try {
    result = handler(o);
  } catch (const ConstructionError& e) {
    err << "construction failed: " << e.what() << '\n';
    return 1;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return 1;
  } catch (const NotAComplex& e) {
    err << "not a complex: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const Json report = full_report(result);
  try {
    if (!o.report_path.empty()) write_report(report, o.report_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  for (const auto& [k, v] : result.checks.items()) out << k << ": " << (v.get<bool>() ? "true" : "false") << '\n';
  if (!result.message.empty()) out << result.message << '\n';
  const bool ok = report["ok"].get<bool>();
  out << (ok ? "OK" : "FAILED") << '\n';
  return ok ? 0 : 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace tacx
