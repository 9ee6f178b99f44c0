#include "tacx/graph_ring.hpp"

#include <algorithm>
#include <numeric>

#include "tacx/error.hpp"

namespace tacx {

namespace {

// Vertices 0..n-1 are x_1..x_n, n..n+m-1 are y_1..y_m.
struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t size) : parent(size) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// X_k as a linear form in the surviving variables; the last vertex of a side is
// minus the sum of the others.
LinearTerms vertex_form(std::size_t k, std::size_t side_size, std::size_t offset) {
  LinearTerms t;
  if (k + 1 < side_size) {
    t[offset + k] = 1;
  } else {
    for (std::size_t i = 0; i + 1 < side_size; ++i) t[offset + i] = -1;
  }
  return t;
}

QuadricTerms multiply_forms(const LinearTerms& a, const LinearTerms& b) {
  QuadricTerms q;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) q[{std::min(i, j), std::max(i, j)}] += ci * cj;
  std::erase_if(q, [](const auto& kv) { return kv.second == 0; });
  return q;
}

Vector add(const PrimeField& F, Vector a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = F.add(a[i], b[i]);
  return a;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

}  // namespace

GraphRingData build_from_graph(const BipartiteGraph& graph, PrimeField field) {
  const std::size_t n = graph.x_count, m = graph.y_count;
  if (n < 2 || m < 2) throw ValidationError("each side needs at least two vertices");
  for (const auto& [i, j] : graph.edges)
    if (i < 1 || i > n || j < 1 || j > m) throw ValidationError("edge refers to a missing vertex");
  if (graph.edges.count({n, m})) throw ValidationError("x" + std::to_string(n) + " and y" + std::to_string(m) +
                                                        " must not be joined by an edge");
  UnionFind whole(n + m);
  for (const auto& [i, j] : graph.edges) whole.unite(i - 1, n + j - 1);
  for (std::size_t v = 1; v < n + m; ++v)
    if (whole.find(v) != whole.find(0)) throw ValidationError("the graph is not connected");

  UnionFind induced(n + m);
  for (const auto& [i, j] : graph.edges)
    if (i < n && j < m) induced.unite(i - 1, n + j - 1);
  std::vector<std::size_t> kept;
  for (std::size_t v = 0; v < n + m; ++v)
    if (v != n - 1 && v != n + m - 1) kept.push_back(v);
  std::vector<std::size_t> roots;
  for (auto v : kept)
    if (std::find(roots.begin(), roots.end(), induced.find(v)) == roots.end()) roots.push_back(induced.find(v));
  if (roots.size() != 2)
    throw ValidationError("the graph without x" + std::to_string(n) + " and y" + std::to_string(m) + " has " +
                          std::to_string(roots.size()) + " components; exactly two are required");

  GraphRingData data;
  data.graph = graph;
  Presentation& p = data.presentation;
  for (std::size_t i = 1; i < n; ++i) p.variables.push_back("x" + std::to_string(i));
  for (std::size_t j = 1; j < m; ++j) p.variables.push_back("y" + std::to_string(j));
  const std::size_t vars = p.variables.size();
  auto name = [&](std::size_t v) { return v < n ? "x" + std::to_string(v + 1) : "y" + std::to_string(v - n + 1); };
  std::vector<bool> in_a(vars, false);
  for (auto v : kept) {
    const bool a = induced.find(v) == roots.front();
    (a ? data.component_a : data.component_b).push_back(name(v));
    in_a[v < n ? v : v - 1] = a;
  }

  // Quadratic generators after substitution, keeping an independent subset.
  std::vector<QuadricTerms> generators;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      generators.push_back(multiply_forms(vertex_form(i, n, 0), vertex_form(j, n, 0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      generators.push_back(multiply_forms(vertex_form(i, m, n - 1), vertex_form(j, m, n - 1)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!graph.edges.count({i + 1, j + 1}))
        generators.push_back(multiply_forms(vertex_form(i, n, 0), vertex_form(j, m, n - 1)));
  std::vector<Vector> accepted;
  for (auto& q : generators) {
    Vector v = quadric_vector(q, vars, field);
    if (is_zero(v)) continue;
    Matrix stacked(field, accepted.size() + 1, v.size());
    for (std::size_t r = 0; r < accepted.size(); ++r)
      for (std::size_t c = 0; c < v.size(); ++c) stacked(r, c) = accepted[r][c];
    for (std::size_t c = 0; c < v.size(); ++c) stacked(accepted.size(), c) = v[c];
    if (rank(stacked) == accepted.size()) continue;
    accepted.push_back(std::move(v));
    p.quadrics.push_back({std::move(q)});
  }

  data.truncation_faithful = verify_truncation(p, field);
  data.algebra = make_algebra(p, field);
  const auto& alg = *data.algebra;
  data.f_a = data.f_b = Vector(vars, 0);
  data.g_a = data.g_b = Vector(vars, 0);
  for (std::size_t k = 0; k < vars; ++k) {
    const bool x = k + 1 < n;
    Vector& target = x ? (in_a[k] ? data.f_a : data.f_b) : (in_a[k] ? data.g_a : data.g_b);
    target[k] = 1;
  }
  const PrimeField& F = alg.field();
  const Vector f = add(F, data.f_a, data.f_b), g = add(F, data.g_a, data.g_b);
  data.fg_zero = is_zero(alg.product(f, g));
  data.delta = alg.product(data.f_a, data.g_a);
  Vector minus = alg.product(data.f_b, data.g_b);
  for (auto& x : minus) x = F.neg(x);
  data.delta_symmetric = data.delta == minus;
  data.delta_nonzero = !is_zero(data.delta);

  data.ab_zero = true;
  for (std::size_t i = 0; i < vars; ++i)
    for (std::size_t j = 0; j < vars; ++j)
      if (in_a[i] && !in_a[j] && !is_zero(Vector(alg.reduce(i, j).begin(), alg.reduce(i, j).end())))
        data.ab_zero = false;

  // degree-2 parts of the ideals: spans of products with every variable
  auto span_of = [&](bool side) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < vars; ++i)
      if (in_a[i] == side)
        for (std::size_t j = 0; j < vars; ++j) rows.emplace_back(alg.reduce(i, j).begin(), alg.reduce(i, j).end());
    return rows;
  };
  auto rank_of = [&](const std::vector<Vector>& rows) {
    Matrix mtx(F, rows.size(), alg.dim2());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < alg.dim2(); ++c) mtx(r, c) = rows[r][c];
    return rank(mtx);
  };
  const auto a_rows = span_of(true), b_rows = span_of(false);
  auto both = a_rows;
  both.insert(both.end(), b_rows.begin(), b_rows.end());
  data.intersection_dim = rank_of(a_rows) + rank_of(b_rows) - rank_of(both);
  return data;
}

bool no_ezd_spotcheck(const ShortAlgebra& alg, const ExhaustiveOptions& options) {
  return search_ezd_exhaustive(alg, options).empty();
}

}  // namespace tacx
