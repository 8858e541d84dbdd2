#include "logitmp/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "logitmp/error.hpp"

namespace logitmp {

Hypergraph Hypergraph::create(int num_products, std::vector<Edge> edges) {
  if (num_products < 1) {
    throw Error(Errc::InvalidArgument, "num_products must be positive");
  }
  for (const Edge& e : edges) {
    if (e.bundle.empty()) throw Error(Errc::EmptyBundle, "edge without items");
    if (e.bundle.front() < 1 || e.bundle.back() > num_products) {
      throw Error(Errc::ItemOutOfRange, "edge " + e.bundle.str() +
                                            " outside [1, " +
                                            std::to_string(num_products) + "]");
    }
    if (!(e.attraction > 0.0) || !std::isfinite(e.attraction)) {
      throw Error(Errc::NonPositiveAttraction,
                  "edge " + e.bundle.str() + " has v = " +
                      std::to_string(e.attraction));
    }
    if (!std::isfinite(e.revenue)) {
      throw Error(Errc::InvalidArgument, "edge " + e.bundle.str() +
                                             " has a non-finite revenue");
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return BySizeThenLex{}(a.bundle, b.bundle);
  });
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k].bundle == edges[k - 1].bundle) {
      throw Error(Errc::DuplicateBundle, edges[k].bundle.str());
    }
  }
  for (int i = 1; i <= num_products; ++i) {
    const auto idx = static_cast<std::size_t>(i - 1);
    if (idx >= edges.size() || edges[idx].bundle != Bundle::singleton(i)) {
      throw Error(Errc::MissingSingleton, "{" + std::to_string(i) + "}");
    }
  }

  Hypergraph g;
  g.num_products_ = num_products;
  g.edges_ = std::move(edges);
  g.incidence_.resize(static_cast<std::size_t>(num_products));
  g.index_.reserve(g.edges_.size());
  for (std::size_t k = 0; k < g.edges_.size(); ++k) {
    const Bundle& b = g.edges_[k].bundle;
    g.index_.emplace(b, k);
    std::uint64_t m = 0;
    for (int item : b.items()) {
      g.incidence_[static_cast<std::size_t>(item - 1)].push_back(k);
      if (item <= 64) m |= std::uint64_t{1} << (item - 1);
    }
    g.masks_.push_back(m);
  }
  return g;
}

Hypergraph Hypergraph::from_utilities(int num_products,
                                      std::vector<UtilityEdge> edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (auto& e : edges) {
    if (!(std::abs(e.utility) <= 700.0)) {
      throw Error(Errc::UtilityOverflow, "edge " + e.bundle.str() +
                                             " has u = " +
                                             std::to_string(e.utility));
    }
    out.push_back({std::move(e.bundle), std::exp(e.utility), e.revenue});
  }
  return create(num_products, std::move(out));
}

std::optional<std::size_t> Hypergraph::find(const Bundle& bundle) const {
  auto it = index_.find(bundle);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Hypergraph::rank() const {
  // Canonical order puts the largest bundles last.
  return static_cast<int>(edges_.back().bundle.size());
}

double Hypergraph::sparsity(std::size_t reference_multi_edge_count) const {
  if (reference_multi_edge_count == 0) {
    throw Error(Errc::ZeroReference, "sparsity reference count is zero");
  }
  return static_cast<double>(num_multi_edges()) /
         static_cast<double>(reference_multi_edge_count);
}

std::vector<NeighborIntersection> neighbor_intersections(const Hypergraph& graph,
                                                         const Bundle& e0) {
  if (!graph.contains(e0)) throw Error(Errc::UnknownBundle, e0.str());
  std::vector<NeighborIntersection> out;
  for (const Edge& e : graph.edges()) {
    if (e.bundle == e0 || !e.bundle.intersects(e0)) continue;
    out.push_back({e.bundle, e.bundle.intersect(e0)});
  }
  return out;
}

namespace {

struct RISearch {
  std::span<const Bundle> sets;
  std::vector<int> order;
  std::vector<bool> used;
  std::unordered_set<std::uint64_t> dead;  // chosen-set states known to fail

  bool extends(std::size_t candidate, const Bundle& covered) const {
    const Bundle n = sets[candidate].intersect(covered);
    if (n.empty()) return true;
    for (int k : order) {
      if (n.is_subset_of(sets[static_cast<std::size_t>(k)])) return true;
    }
    return false;
  }

  bool run(std::uint64_t state, const Bundle& covered) {
    if (order.size() == sets.size()) return true;
    if (dead.contains(state)) return false;
    for (std::size_t c = 0; c < sets.size(); ++c) {
      if (used[c] || !extends(c, covered)) continue;
      used[c] = true;
      order.push_back(static_cast<int>(c));
      if (run(state | (std::uint64_t{1} << c), covered.unite(sets[c]))) {
        return true;
      }
      order.pop_back();
      used[c] = false;
    }
    dead.insert(state);
    return false;
  }
};

}  // namespace

std::optional<RIOrdering> find_ri_ordering(std::span<const Bundle> sets) {
  if (sets.empty() || sets.size() > 64) {
    throw Error(Errc::InvalidArgument, "find_ri_ordering needs 1..64 sets");
  }
  RISearch search{sets, {}, std::vector<bool>(sets.size(), false), {}};
  if (!search.run(0, Bundle{})) return std::nullopt;

  RIOrdering out;
  Bundle covered;
  for (int k : search.order) {
    const Bundle& s = sets[static_cast<std::size_t>(k)];
    out.order.push_back(s);
    out.neighbors.push_back(s.intersect(covered));
    covered = covered.unite(s);
  }
  return out;
}

bool is_ri_ordering(const RIOrdering& ordering) {
  if (ordering.order.size() != ordering.neighbors.size()) return false;
  Bundle covered;
  for (std::size_t i = 0; i < ordering.order.size(); ++i) {
    const Bundle expect = ordering.order[i].intersect(covered);
    if (expect != ordering.neighbors[i]) return false;
    if (!expect.empty()) {
      bool contained = false;
      for (std::size_t j = 0; j < i && !contained; ++j) {
        contained = expect.is_subset_of(ordering.order[j]);
      }
      if (!contained) return false;
    }
    covered = covered.unite(ordering.order[i]);
  }
  return true;
}

}  // namespace logitmp
