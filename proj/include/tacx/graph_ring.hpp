#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tacx/algebra.hpp"
#include "tacx/ezd.hpp"
#include "tacx/presentation.hpp"

namespace tacx {

/// The ring R = k[Gamma]/(sum X_i, sum Y_j) of a bipartite graph, presented in
/// x_1..x_{n-1}, y_1..y_{m-1}, with the component data of the graph minus x_n, y_m.
struct GraphRingData {
  BipartiteGraph graph;
  /// Vertex names ("x1", "y2", ...) of the two components; A holds the first vertex.
  std::vector<std::string> component_a;
  std::vector<std::string> component_b;
  Presentation presentation;
  AlgebraPtr algebra;
  Vector f_a, f_b, g_a, g_b;  // degree 1
  Vector delta;               // f_A g_A, degree 2

  bool truncation_faithful = false;
  bool fg_zero = false;
  /// f_A g_A == -f_B g_B
  bool delta_symmetric = false;
  bool delta_nonzero = false;
  /// Every product of an A-variable with a B-variable vanishes.
  bool ab_zero = false;
  /// dim of the intersection of the degree-2 parts of the ideals generated by A and B.
  std::size_t intersection_dim = 0;

  bool all_checks() const {
    return truncation_faithful && fg_zero && delta_symmetric && delta_nonzero && ab_zero && intersection_dim == 1;
  }
};

/// Throws ValidationError naming the violated hypothesis: the graph must be
/// connected, (x_n, y_m) must not be an edge and the graph minus x_n, y_m must
/// have exactly two components.
GraphRingData build_from_graph(const BipartiteGraph& graph, PrimeField field);

/// True iff the exhaustive search finds no exact zero divisors.
bool no_ezd_spotcheck(const ShortAlgebra& alg, const ExhaustiveOptions& options = {});

}  // namespace tacx
