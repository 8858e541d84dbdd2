#include "logitmp/choice_model.hpp"

#include "logitmp/error.hpp"

namespace logitmp {

Assortment assortment_from_items(int num_products, std::span<const int> items) {
  Assortment x(static_cast<std::size_t>(num_products), 0);
  for (int i : items) {
    if (i < 1 || i > num_products) {
      throw Error(Errc::ItemOutOfRange, "item " + std::to_string(i));
    }
    x[static_cast<std::size_t>(i - 1)] = 1;
  }
  return x;
}

std::vector<int> assortment_items(const Assortment& x) {
  std::vector<int> out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k]) out.push_back(static_cast<int>(k + 1));
  }
  return out;
}

namespace {

bool offered(const Hypergraph& graph, std::size_t e, const Assortment& x,
             std::uint64_t mask) {
  if (graph.has_masks()) return (graph.mask(e) & ~mask) == 0;
  for (int i : graph.edge(e).bundle.items()) {
    if (!x[static_cast<std::size_t>(i - 1)]) return false;
  }
  return true;
}

std::uint64_t to_mask(const Assortment& x) {
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < x.size() && k < 64; ++k) {
    if (x[k]) m |= std::uint64_t{1} << k;
  }
  return m;
}

}  // namespace

ChoicePoint choice_point(const Hypergraph& graph, const Assortment& x) {
  if (x.size() != static_cast<std::size_t>(graph.num_products())) {
    throw Error(Errc::InvalidArgument, "assortment length mismatch");
  }
  const std::uint64_t mask = to_mask(x);
  ChoicePoint p;
  p.y.assign(graph.num_edges(), 0.0);
  double denom = 1.0;
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    if (offered(graph, e, x, mask)) {
      p.y[e] = 1.0;
      denom += graph.edge(e).attraction;
    }
  }
  p.rho = 1.0 / denom;
  for (double& y : p.y) y *= p.rho;
  return p;
}

ChoiceProbabilities choice_probabilities(const Hypergraph& graph,
                                         const Assortment& x) {
  const ChoicePoint p = choice_point(graph, x);
  ChoiceProbabilities out;
  out.rho = p.rho;
  out.bundle.resize(p.y.size());
  for (std::size_t e = 0; e < p.y.size(); ++e) {
    out.bundle[e] = graph.edge(e).attraction * p.y[e];
  }
  return out;
}

double expected_revenue(const Hypergraph& graph, const Assortment& x) {
  const ChoiceProbabilities p = choice_probabilities(graph, x);
  double total = 0.0;
  for (std::size_t e = 0; e < p.bundle.size(); ++e) {
    total += graph.edge(e).revenue * p.bundle[e];
  }
  return total;
}

std::vector<EnumeratedPoint> enumerate_choice_set(const Hypergraph& graph,
                                                  int max_products) {
  const int n = graph.num_products();
  if (n > max_products || n > 30) {
    throw Error(Errc::TooLarge, "N = " + std::to_string(n) +
                                    " exceeds enumeration guard " +
                                    std::to_string(max_products));
  }
  std::vector<EnumeratedPoint> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    Assortment x(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = (s >> k) & 1U;
    ChoicePoint p = choice_point(graph, x);
    out.push_back({std::move(x), std::move(p)});
  }
  return out;
}

}  // namespace logitmp
