#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logitmp/formulations.hpp"
#include "logitmp/hypergraph.hpp"
#include "logitmp/rng.hpp"

namespace logitmp {

struct GenSpec {
  int num_products = 10;
  int rank = 2;
  double theta = 0.25;
  double pi = 0.5;
  int categories = 3;
  std::uint64_t seed = 1;
  // mixtures
  int segments = 2;
  double box_low = 0.95;
  double box_high = 1.05;
  double budget = 0.1;
  // sum x <= floor(cap_fraction * N); negative disables the cap
  double cap_fraction = 0.2;
};

// A single- or multi-segment instance as stored on disk.
struct Instance {
  int num_products = 0;
  // Exactly one segment for single-class instances (weight 1).
  std::vector<Segment> segments;
  ConstraintSet constraints;
  std::optional<Uncertainty> uncertainty;
  // Opaque JSON text carried through load/save ("{}" when absent).
  std::string meta = "{}";

  bool is_mixture() const { return segments.size() > 1; }
  const Hypergraph& graph() const { return segments.front().graph; }
};

// Number of bundles with 2..rank items over n products.
std::uint64_t multi_bundle_count(int num_products, int rank);

// Round-half-up count of theta * |E_d \ V| and its cross / intra split
// (cross rounded up).
struct BundleCounts {
  std::uint64_t total = 0;
  std::uint64_t cross = 0;
  std::uint64_t intra = 0;
};
BundleCounts bundle_counts(const GenSpec& spec);

// Category (0-based) of each item, indexed by item - 1; drawn first from rng.
std::vector<int> assign_categories(int num_products, int categories, SplitMix64& rng);

// Single-class protocol with additive revenues and the cardinality cap.
// Throws InfeasibleCounts or TooLarge.
Instance generate_single(const GenSpec& spec);

// K-segment protocol with the box + budget + simplex weight set.
Instance generate_mixture(const GenSpec& spec);

// Box [low, high] * weights, budget on sum |w - weights|, simplex; the
// extended vector is (w, p, q) with w - weights = p - q.
Uncertainty box_budget_set(const std::vector<double>& weights, double low, double high,
                           double budget);

std::string to_json(const Instance& instance);
Instance from_json(const std::string& text);
void save_instance(const Instance& instance, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace logitmp
