#pragma once

#include <cstdint>
#include <vector>

#include "logitmp/hypergraph.hpp"

namespace logitmp {

// An assortment as an indicator vector over items 1..N (index i-1).
using Assortment = std::vector<std::uint8_t>;

Assortment assortment_from_items(int num_products, std::span<const int> items);
std::vector<int> assortment_items(const Assortment& x);

// Point of the choice probability set: no-purchase probability rho and
// y_e = 1(e ⊆ S) * rho, so that bundle e is bought with probability v_e*y_e.
// y is indexed like Hypergraph::edges().
struct ChoicePoint {
  double rho = 1.0;
  std::vector<double> y;
};

struct ChoiceProbabilities {
  double rho = 1.0;
  // Purchase probability per edge, indexed like Hypergraph::edges().
  std::vector<double> bundle;
};

ChoiceProbabilities choice_probabilities(const Hypergraph& graph,
                                         const Assortment& x);
double expected_revenue(const Hypergraph& graph, const Assortment& x);
ChoicePoint choice_point(const Hypergraph& graph, const Assortment& x);

struct EnumeratedPoint {
  Assortment x;
  ChoicePoint point;
};

// Every point of C_G, one per x in {0,1}^N, in binary counting order
// (item 1 is the least significant bit). Throws TooLarge for N > max_products.
std::vector<EnumeratedPoint> enumerate_choice_set(const Hypergraph& graph,
                                                  int max_products = 20);

}  // namespace logitmp
