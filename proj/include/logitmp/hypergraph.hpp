#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "logitmp/bundle.hpp"

namespace logitmp {

// One hyperedge: a bundle the customer considers, its attraction v = exp(u)
// and the revenue collected when it is sold.
struct Edge {
  Bundle bundle;
  double attraction = 1.0;
  double revenue = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Multi-purchase hypergraph G(V, E). Immutable after construction.
//
// Edges are stored in canonical order (size, then lexicographic), so the
// singletons {1}..{N} always occupy indices 0..N-1.
class Hypergraph {
 public:
  // Validates and canonicalizes the edge list. Throws Error with
  // DuplicateBundle, NonPositiveAttraction, ItemOutOfRange, EmptyBundle or
  // MissingSingleton.
  static Hypergraph create(int num_products, std::vector<Edge> edges);

  // Same as create() but takes utilities u and sets v = exp(u). Throws
  // UtilityOverflow when |u| > 700.
  struct UtilityEdge {
    Bundle bundle;
    double utility;
    double revenue;
  };
  static Hypergraph from_utilities(int num_products,
                                   std::vector<UtilityEdge> edges);

  int num_products() const { return num_products_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }
  const Edge& edge(std::size_t index) const { return edges_[index]; }

  std::optional<std::size_t> find(const Bundle& bundle) const;
  bool contains(const Bundle& bundle) const { return find(bundle).has_value(); }
  std::size_t singleton_index(int item) const {
    return static_cast<std::size_t>(item - 1);
  }
  // Edge indices of all e with item in e (singleton included).
  std::span<const std::size_t> incident(int item) const {
    return incidence_[static_cast<std::size_t>(item - 1)];
  }
  // Bitmask of the items of edge `index`; only meaningful for N <= 64.
  std::uint64_t mask(std::size_t index) const { return masks_[index]; }
  bool has_masks() const { return num_products_ <= 64; }

  // Maximum bundle cardinality d.
  int rank() const;
  // Number of non-singleton edges |E \ V|.
  std::size_t num_multi_edges() const {
    return edges_.size() - static_cast<std::size_t>(num_products_);
  }
  // theta(G) = |E \ V| / reference. Throws ZeroReference.
  double sparsity(std::size_t reference_multi_edge_count) const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.num_products_ == b.num_products_ && a.edges_ == b.edges_;
  }

 private:
  Hypergraph() = default;

  int num_products_ = 0;
  std::vector<Edge> edges_;
  std::unordered_map<Bundle, std::size_t> index_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<std::uint64_t> masks_;
};

struct NeighborIntersection {
  Bundle neighbor;
  Bundle intersection;
};

// All edges other than e0 that meet e0, paired with their intersection with
// e0, in canonical edge order. Throws UnknownBundle when e0 is not an edge.
std::vector<NeighborIntersection> neighbor_intersections(const Hypergraph& graph,
                                                         const Bundle& e0);

// An ordering with the running intersection property and the sets
// N(e_i) = e_i ∩ (e_1 ∪ ... ∪ e_{i-1}).
struct RIOrdering {
  std::vector<Bundle> order;
  std::vector<Bundle> neighbors;
};

// Greedy search with backtracking over the family `sets` (pairwise distinct,
// non-empty). Returns nullopt when no running intersection ordering exists.
std::optional<RIOrdering> find_ri_ordering(std::span<const Bundle> sets);

// Re-checks the containment condition of an ordering.
bool is_ri_ordering(const RIOrdering& ordering);

}  // namespace logitmp
