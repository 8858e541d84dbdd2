#pragma once

#include <span>
#include <vector>

#include "logitmp/hypergraph.hpp"
#include "logitmp/model_ir.hpp"
#include "logitmp/relaxation.hpp"

namespace logitmp {

class Backend;

// Linear side constraints on x only. x = 0 must be feasible.
struct ConstraintSet {
  std::vector<LinearRow> rows;

  static ConstraintSet none() { return {}; }
  // sum_i x_i <= cap
  static ConstraintSet cardinality(int num_products, int cap);

  // Throws ItemOutOfRange / InvalidArgument for rows touching non-x
  // variables and InfeasibleConstraintSet when x = 0 violates a row.
  void validate(int num_products) const;
  bool satisfied_by(std::span<const std::uint8_t> x, double tol = 1e-9) const;
};

// Oracle row over z -> row over (rho, y): z_e becomes y_e and a constant
// right-hand side b becomes b * rho on the left.
LinearRow homogenize(const LinearRow& zrow);

// The four extreme x-link rows for item i (lower bounds first).
std::vector<LinearRow> base_x_link_rows(const Hypergraph& graph, int item);

// Perspective model with the oracle homogenized by rho, the normalization
// row, 0 <= y_e <= rho on E ∪ W, base x-link rows, X and X homogenized on
// the singleton y. No objective.
// Throws MissingRmc unless the relaxation carries the RMC family.
ModelIR build_base_perspective(const Hypergraph& graph, const Relaxation& oracle,
                               const ConstraintSet& constraints);

struct BigMBounds {
  double rho_lower;
  double rho_upper;
};

// Default global bounds 1/(1 + sum v) <= rho <= 1.
BigMBounds default_bigm_bounds(const Hypergraph& graph);

// Charnes-Cooper model: explicit z in [0,1] on E \ V and W (z_i is x_i),
// oracle rows on z, McCormick envelopes of y_e = rho z_e. Throws BadBounds.
ModelIR build_bigm(const Hypergraph& graph, const Relaxation& oracle,
                   const ConstraintSet& constraints, BigMBounds bounds);

// Appends rho (1 + sum v z) >= 1 and y_e (1 + sum v z) >= z_e^2. Throws
// NotBigM for models without z variables.
void add_conic(ModelIR& model, const Hypergraph& graph);

// maximize sum_e r_e v_e y_e (segment < 0 for single-segment models).
void set_assortment_objective(ModelIR& model, const Hypergraph& graph,
                              int segment = -1, double weight = 1.0);

struct Segment {
  Hypergraph graph;
  double weight = 1.0;
};

// Per-segment perspective blocks with RMC oracles and one shared x; X is
// homogenized in every block.
// Throws WeightsNotSimplex.
ModelIR build_mixture(std::span<const Segment> segments,
                      const ConstraintSet& constraints);

// Polyhedral weight set {w : B w >= d}; the first num_weights entries of w
// are the segment weights, the rest are auxiliary variables.
struct Uncertainty {
  std::vector<std::vector<double>> B;
  std::vector<double> d;
  int num_weights = 0;

  std::size_t num_cols() const { return B.empty() ? 0 : B.front().size(); }
  // {lambda_hat}
  static Uncertainty singleton(std::span<const double> weights);
};

// Checks non-emptiness and that every weight stays in [0, 1]. Throws
// EmptyUncertainty or WeightsNotSimplex.
void check_uncertainty(const Uncertainty& set, Backend& backend);

// Dual reformulation of the worst case over the weight set. Segment weights
// are ignored.
ModelIR build_robust(std::span<const Segment> segments, const Uncertainty& set,
                     const ConstraintSet& constraints, Backend& backend);

}  // namespace logitmp
