#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "logitmp/choice_model.hpp"
#include "logitmp/formulations.hpp"

namespace logitmp {

class Backend;

struct EnumerationResult {
  Assortment best;
  double value = 0.0;
  // Every feasible assortment with its value, in binary counting order
  // (item 1 least significant). Filled only on request.
  std::vector<std::pair<Assortment, double>> table;
};

struct EnumerationOptions {
  bool keep_table = false;
  int workers = 1;
  int max_products = 24;
};

// Expected revenue maximized over feasible x, Gray-code order with
// incremental sums. Ties go to the lexicographically smallest item list.
EnumerationResult brute_force_optimum(const Hypergraph& graph,
                                      const ConstraintSet& constraints,
                                      const EnumerationOptions& options = {});

// Weighted revenue sum_k weight_k R_k(x).
EnumerationResult brute_force_optimum(std::span<const Segment> segments,
                                      const ConstraintSet& constraints,
                                      const EnumerationOptions& options = {});

// Worst-case weighted revenue over the weight set, maximized over x; the
// inner minimum is an LP per assortment.
EnumerationResult robust_brute_force(std::span<const Segment> segments,
                                     const Uncertainty& set,
                                     const ConstraintSet& constraints, Backend& backend,
                                     int max_products = 20);

// min over the weight set of sum_k w_k revenue_k.
double worst_case_value(std::span<const double> segment_revenues, const Uncertainty& set,
                        Backend& backend);

// True when the point is a convex combination of the points of C_G, up to
// an L1 residual of 1e-7.
bool hull_membership(const ChoicePoint& point, const Hypergraph& graph, Backend& backend);

void write_table_csv(const EnumerationResult& result, std::ostream& out);

}  // namespace logitmp
