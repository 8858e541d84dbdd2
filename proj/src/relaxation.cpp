#include "logitmp/relaxation.hpp"

#include <set>

namespace logitmp {

RmcTree build_rmc_trees(const Hypergraph& graph) {
  RmcTree tree;
  std::set<Bundle, BySizeThenLex> pending;
  std::set<Bundle> visited;
  for (const Edge& e : graph.edges()) {
    if (e.bundle.size() >= 2) pending.insert(e.bundle);
  }
  while (!pending.empty()) {
    Bundle t = *pending.begin();
    pending.erase(pending.begin());
    visited.insert(t);
    Bundle left = t.without_last();
    const int right = t.back();
    if (left.size() > 1 && !visited.contains(left) && !pending.contains(left)) {
      pending.insert(left);
      if (!graph.contains(left)) tree.auxiliary.push_back(left);
    }
    tree.nodes.push_back({std::move(t), std::move(left), right});
  }
  return tree;
}

std::vector<LinearRow> rmc_inequalities(const RmcTree& tree) {
  std::vector<LinearRow> rows;
  rows.reserve(4 * tree.nodes.size());
  for (const RmcNode& n : tree.nodes) {
    const Var t = Var::z(n.bundle);
    const Var l = Var::z(n.left);
    const Var r = Var::z(Bundle::singleton(n.right));
    rows.push_back(LinearRow{{{t, -1.0}}, Sense::Le, 0.0});
    rows.push_back(LinearRow{{{l, 1.0}, {r, 1.0}, {t, -1.0}}, Sense::Le, 1.0});
    rows.push_back(LinearRow{{{t, 1.0}, {l, -1.0}}, Sense::Le, 0.0});
    rows.push_back(LinearRow{{{t, 1.0}, {r, -1.0}}, Sense::Le, 0.0});
  }
  return rows;
}

std::vector<LinearRow> standard_linear_relaxation(const Hypergraph& graph) {
  std::vector<LinearRow> rows;
  for (const Edge& e : graph.edges()) {
    if (e.bundle.size() < 2) continue;
    const Var t = Var::z(e.bundle);
    rows.push_back(LinearRow{{{t, -1.0}}, Sense::Le, 0.0});
    LinearRow lower;
    lower.sense = Sense::Le;
    lower.rhs = static_cast<double>(e.bundle.size()) - 1.0;
    for (int i : e.bundle.items()) {
      const Var leaf = Var::z(Bundle::singleton(i));
      rows.push_back(LinearRow{{{t, 1.0}, {leaf, -1.0}}, Sense::Le, 0.0});
      lower.add(leaf, 1.0);
    }
    lower.add(t, -1.0);
    rows.push_back(std::move(lower));
  }
  return rows;
}

Relaxation rmc_relaxation(const Hypergraph& graph) {
  RmcTree tree = build_rmc_trees(graph);
  Relaxation out;
  out.rows = rmc_inequalities(tree);
  out.auxiliary = std::move(tree.auxiliary);
  out.has_rmc = true;
  return out;
}

}  // namespace logitmp
