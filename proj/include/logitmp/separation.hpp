#pragma once

#include <map>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logitmp/hypergraph.hpp"
#include "logitmp/linear_row.hpp"

namespace logitmp {

// LP point (rho, y, x) handed to the oracles. y covers E and W.
struct FractionalPoint {
  double rho = 0.0;
  std::unordered_map<Bundle, double> y;
  std::vector<double> x;

  double y_of(const Bundle& b) const;
  double value(const Var& var) const;
};

enum class CutFamily { XLower, XUpper, OddCycle, RunningIntersection };

std::string_view family_name(CutFamily family);

struct Cut {
  LinearRow row;
  CutFamily family = CutFamily::XLower;
  double violation = 0.0;
};

// Le form with normalized terms, used for deduplication and comparisons.
LinearRow canonical_form(const LinearRow& row);

// Checks the x-link bounds with their best linearization at p.
std::vector<Cut> separate_x_bounds(const FractionalPoint& p, const Hypergraph& graph,
                                   double eps);

// A closed walk in G ∪ {o}; node 0 is the virtual node o. Edge k joins
// nodes[k] and nodes[(k + 1) % size]; cross[k] marks membership in D.
struct OddCycle {
  std::vector<int> nodes;
  std::vector<bool> cross;
};

// sum_D (rho - c_uv) + sum_{C \ D} c_uv >= rho with c_uv = y_u + y_v - 2 y_uv
// and c_uo = y_u, halved so that coefficients are integral.
LinearRow odd_cycle_inequality(const OddCycle& cycle);

// Shortest-path oracle over the doubled graph of the rank-2 edges. Throws
// NegativeWeight when an edge length is below -1e-9.
std::vector<Cut> separate_odd_cycle(const FractionalPoint& p, const Hypergraph& graph,
                                    double eps);

struct RIStructure {
  Bundle center;
  std::vector<RIOrdering> orderings;
  // intersection with the center -> neighbors, canonical order
  std::map<Bundle, std::vector<Bundle>> neighbors;
};

// One structure per center e0 with |e0| >= 2: every antichain of at most
// m_bar distinct intersections that admits a running intersection ordering
// contributes the first ordering found.
std::vector<RIStructure> build_ri_structures(const Hypergraph& graph, int m_bar = 3);

// The running intersection inequality of one ordering with chosen
// neighbors and mu items.
LinearRow running_intersection_inequality(const Bundle& center,
                                          std::span<const Bundle> chosen,
                                          std::span<const Bundle> intersections,
                                          std::span<const Bundle> neighbor_sets,
                                          std::span<const int> mu);

std::vector<Cut> separate_running_intersection(const FractionalPoint& p,
                                               std::span<const RIStructure> structures,
                                               double eps);

}  // namespace logitmp
