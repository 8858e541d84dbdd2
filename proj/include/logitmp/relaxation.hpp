#pragma once

#include <vector>

#include "logitmp/hypergraph.hpp"
#include "logitmp/linear_row.hpp"

namespace logitmp {

// Internal node t of a recursive McCormick tree: t = left ∪ {right}.
struct RmcNode {
  Bundle bundle;
  Bundle left;
  int right = 0;
};

struct RmcTree {
  // Internal nodes in processing order: the smallest pending bundle (size,
  // then lexicographic) is expanded next.
  std::vector<RmcNode> nodes;
  // Auxiliary bundles W: internal nodes that are not edges of the graph.
  std::vector<Bundle> auxiliary;
};

// Left-deep trees: the left child drops the largest item, shared prefixes
// are created once.
RmcTree build_rmc_trees(const Hypergraph& graph);

// Four rows per internal node over z variables; z_{i} for singletons stands
// for x_i.
std::vector<LinearRow> rmc_inequalities(const RmcTree& tree);

// z_e >= 0, z_e <= z_i for i in e, z_e >= sum z_i - |e| + 1 for e in E \ V.
std::vector<LinearRow> standard_linear_relaxation(const Hypergraph& graph);

// A relaxation oracle Az + Bw <= b over the z variables of E ∪ W.
struct Relaxation {
  std::vector<Bundle> auxiliary;
  std::vector<LinearRow> rows;
  bool has_rmc = false;
};

Relaxation rmc_relaxation(const Hypergraph& graph);

}  // namespace logitmp
