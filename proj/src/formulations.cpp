#include "logitmp/formulations.hpp"

#include <cmath>

#include "logitmp/error.hpp"
#include "logitmp/solver_backend.hpp"

namespace logitmp {

ConstraintSet ConstraintSet::cardinality(int num_products, int cap) {
  LinearRow row;
  for (int i = 1; i <= num_products; ++i) row.add(Var::x(i), 1.0);
  row.sense = Sense::Le;
  row.rhs = cap;
  return ConstraintSet{{row}};
}

void ConstraintSet::validate(int num_products) const {
  for (const LinearRow& r : rows) {
    for (const Term& t : r.terms) {
      if (t.var.kind != VarKind::X) {
        throw Error(Errc::InvalidArgument, "constraint rows may only use x");
      }
      const int item = t.var.bundle.front();
      if (item < 1 || item > num_products) {
        throw Error(Errc::ItemOutOfRange, "constraint on item " + std::to_string(item));
      }
    }
    if (violation(r, [](const Var&) { return 0.0; }) > 1e-12) {
      throw Error(Errc::InfeasibleConstraintSet, "x = 0 violates " + r.str());
    }
  }
}

bool ConstraintSet::satisfied_by(std::span<const std::uint8_t> x, double tol) const {
  const auto value = [&](const Var& v) {
    return static_cast<double>(x[static_cast<std::size_t>(v.bundle.front() - 1)]);
  };
  for (const LinearRow& r : rows) {
    if (violation(r, value) > tol) return false;
  }
  return true;
}

LinearRow homogenize(const LinearRow& zrow) {
  LinearRow out;
  out.sense = zrow.sense;
  out.rhs = 0.0;
  for (const Term& t : zrow.terms) {
    if (t.var.kind != VarKind::Z) {
      throw Error(Errc::InvalidArgument, "oracle rows must be over z");
    }
    out.add(Var::y(t.var.bundle), t.coef);
  }
  if (zrow.rhs != 0.0) out.add(Var::rho(), -zrow.rhs);
  return out;
}

std::vector<LinearRow> base_x_link_rows(const Hypergraph& graph, int item) {
  const Bundle self = Bundle::singleton(item);
  LinearRow core;
  core.add(Var::x(item), 1.0).add(Var::y(self), -1.0);
  for (const Edge& e : graph.edges()) {
    if (e.bundle.contains(item)) core.add(Var::y(e.bundle), -e.attraction);
  }
  LinearRow r1 = core, r2 = core, r3 = core, r4 = core;
  r1.sense = r2.sense = Sense::Ge;
  r3.sense = r4.sense = Sense::Le;
  for (const Edge& e : graph.edges()) {
    if (e.bundle.contains(item)) continue;
    const double v = e.attraction;
    r2.add(Var::y(self), -v).add(Var::y(e.bundle), -v).add(Var::rho(), v);
    r3.add(Var::y(self), -v);
    r4.add(Var::y(e.bundle), -v);
  }
  return {r1.normalized(), r2.normalized(), r3.normalized(), r4.normalized()};
}

namespace {

void add_x_columns(ModelIR& m, int num_products) {
  for (int i = 1; i <= num_products; ++i) {
    m.add_column({Var::x(i).name(), 0.0, 1.0, true});
  }
}

void add_constraints(ModelIR& m, const ConstraintSet& x, int num_products) {
  x.validate(num_products);
  for (const LinearRow& r : x.rows) m.add_row(r);
}

// a x (sense) b becomes a y_V (sense) b rho: valid since y_i = rho x_i on C_G.
void add_homogenized_constraints(ModelIR& m, const ConstraintSet& x, int segment) {
  for (const LinearRow& r : x.rows) {
    LinearRow h{{}, r.sense, 0.0};
    for (const Term& t : r.terms) h.terms.push_back({Var::y(Bundle{t.var.bundle.front()}), t.coef});
    if (r.rhs != 0.0) h.terms.push_back({Var::rho(), -r.rhs});
    m.add_row(h, segment);
  }
}

void add_perspective_block(ModelIR& m, const Hypergraph& g, const Relaxation& oracle,
                           int segment) {
  if (!oracle.has_rmc) {
    throw Error(Errc::MissingRmc, "perspective formulation needs the RMC rows");
  }
  const int rho = m.add_column({ModelIR::column_name(Var::rho(), segment), 0.0, kInf});
  std::vector<Bundle> ybundles;
  for (const Edge& e : g.edges()) ybundles.push_back(e.bundle);
  ybundles.insert(ybundles.end(), oracle.auxiliary.begin(), oracle.auxiliary.end());
  for (const Bundle& b : ybundles) {
    const int y = m.add_column({ModelIR::column_name(Var::y(b), segment), 0.0, kInf});
    m.rows.push_back(Row{{{y, 1.0}, {rho, -1.0}}, -kInf, 0.0});
  }
  Row norm{{{rho, 1.0}}, 1.0, 1.0};
  for (const Edge& e : g.edges()) {
    norm.coeffs.emplace_back(m.column(Var::y(e.bundle), segment), e.attraction);
  }
  m.rows.push_back(std::move(norm));
  for (const LinearRow& r : oracle.rows) m.add_row(homogenize(r), segment);
  for (int i = 1; i <= g.num_products(); ++i) {
    for (const LinearRow& r : base_x_link_rows(g, i)) m.add_row(r, segment);
  }
}

void check_simplex(std::span<const Segment> segments) {
  if (segments.empty()) throw Error(Errc::WeightsNotSimplex, "no segments");
  double total = 0.0;
  for (const Segment& s : segments) {
    if (!(s.weight >= 0.0)) throw Error(Errc::WeightsNotSimplex, "negative weight");
    if (s.graph.num_products() != segments.front().graph.num_products()) {
      throw Error(Errc::InvalidArgument, "segments disagree on N");
    }
    total += s.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(Errc::WeightsNotSimplex, "weights sum to " + format_number(total));
  }
}

// z column of bundle b in a Big-M model; singletons are the x columns.
int zcol(const ModelIR& m, const Bundle& b) {
  return b.size() == 1 ? m.column(Var::x(b.front())) : m.column(Var::z(b));
}

}  // namespace

ModelIR build_base_perspective(const Hypergraph& graph, const Relaxation& oracle,
                               const ConstraintSet& constraints) {
  ModelIR m;
  m.kind = ModelKind::Perspective;
  add_x_columns(m, graph.num_products());
  add_perspective_block(m, graph, oracle, -1);
  add_constraints(m, constraints, graph.num_products());
  add_homogenized_constraints(m, constraints, -1);
  return m;
}

BigMBounds default_bigm_bounds(const Hypergraph& graph) {
  double total = 1.0;
  for (const Edge& e : graph.edges()) total += e.attraction;
  return {1.0 / total, 1.0};
}

ModelIR build_bigm(const Hypergraph& graph, const Relaxation& oracle,
                   const ConstraintSet& constraints, BigMBounds bounds) {
  const double lo = bounds.rho_lower, hi = bounds.rho_upper;
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) {
    throw Error(Errc::BadBounds, "need 0 <= rho_L <= rho_U <= 1");
  }
  ModelIR m;
  m.kind = ModelKind::BigM;
  add_x_columns(m, graph.num_products());
  const int rho = m.add_column({Var::rho().name(), 0.0, kInf});
  for (const Edge& e : graph.edges()) {
    if (e.bundle.size() > 1) m.add_column({Var::z(e.bundle).name(), 0.0, 1.0});
  }
  for (const Bundle& w : oracle.auxiliary) m.add_column({Var::z(w).name(), 0.0, 1.0});
  Row norm{{{rho, 1.0}}, 1.0, 1.0};
  for (const Edge& e : graph.edges()) {
    const int y = m.add_column({Var::y(e.bundle).name(), 0.0, kInf});
    norm.coeffs.emplace_back(y, e.attraction);
    const int z = zcol(m, e.bundle);
    // y >= lo z ; y >= hi z + rho - hi ; y <= lo z + rho - lo ; y <= hi z
    m.rows.push_back(Row{{{y, 1.0}, {z, -lo}}, 0.0, kInf});
    m.rows.push_back(Row{{{y, 1.0}, {z, -hi}, {rho, -1.0}}, -hi, kInf});
    m.rows.push_back(Row{{{y, 1.0}, {z, -lo}, {rho, -1.0}}, -kInf, -lo});
    m.rows.push_back(Row{{{y, 1.0}, {z, -hi}}, -kInf, 0.0});
  }
  m.rows.push_back(std::move(norm));
  for (const LinearRow& r : oracle.rows) {
    LinearRow mapped;
    mapped.sense = r.sense;
    mapped.rhs = r.rhs;
    for (const Term& t : r.terms) {
      mapped.add(t.var.bundle.size() == 1 ? Var::x(t.var.bundle.front()) : t.var, t.coef);
    }
    m.add_row(mapped);
  }
  add_constraints(m, constraints, graph.num_products());
  return m;
}

void add_conic(ModelIR& model, const Hypergraph& graph) {
  if (model.kind != ModelKind::BigM) {
    throw Error(Errc::NotBigM, "conic rows need the explicit z of a Big-M model");
  }
  Affine denom;
  denom.constant = 1.0;
  for (const Edge& e : graph.edges()) {
    denom.terms.emplace_back(zcol(model, e.bundle), e.attraction);
  }
  const int rho = model.column(Var::rho());
  model.cones.push_back(ConeRow{Affine{{{rho, 1.0}}, 0.0}, denom, {Affine{{}, 1.0}}});
  for (const Edge& e : graph.edges()) {
    const int y = model.column(Var::y(e.bundle));
    const int z = zcol(model, e.bundle);
    model.cones.push_back(ConeRow{Affine{{{y, 1.0}}, 0.0}, denom, {Affine{{{z, 1.0}}, 0.0}}});
  }
}

void set_assortment_objective(ModelIR& model, const Hypergraph& graph, int segment,
                              double weight) {
  model.objective.maximize = true;
  for (const Edge& e : graph.edges()) {
    const double c = weight * e.revenue * e.attraction;
    if (c != 0.0) model.objective.coeffs.emplace_back(model.column(Var::y(e.bundle), segment), c);
  }
}

ModelIR build_mixture(std::span<const Segment> segments,
                      const ConstraintSet& constraints) {
  check_simplex(segments);
  const int n = segments.front().graph.num_products();
  const bool single = segments.size() == 1;
  ModelIR m;
  m.kind = ModelKind::Perspective;
  add_x_columns(m, n);
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const int seg = single ? -1 : static_cast<int>(k);
    add_perspective_block(m, segments[k].graph, rmc_relaxation(segments[k].graph), seg);
  }
  add_constraints(m, constraints, n);
  for (std::size_t k = 0; k < segments.size(); ++k) {
    add_homogenized_constraints(m, constraints, single ? -1 : static_cast<int>(k));
  }
  m.objective.coeffs.clear();
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const int seg = single ? -1 : static_cast<int>(k);
    set_assortment_objective(m, segments[k].graph, seg, segments[k].weight);
  }
  return m;
}

Uncertainty Uncertainty::singleton(std::span<const double> weights) {
  Uncertainty u;
  u.num_weights = static_cast<int>(weights.size());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    std::vector<double> row(weights.size(), 0.0);
    row[k] = 1.0;
    u.B.push_back(row);
    u.d.push_back(weights[k]);
    row[k] = -1.0;
    u.B.push_back(row);
    u.d.push_back(-weights[k]);
  }
  return u;
}

void check_uncertainty(const Uncertainty& set, Backend& backend) {
  const std::size_t cols = set.num_cols();
  if (set.B.size() != set.d.size() || set.num_weights < 1 ||
      cols < static_cast<std::size_t>(set.num_weights)) {
    throw Error(Errc::InvalidArgument, "malformed uncertainty set");
  }
  ModelIR m;
  for (std::size_t c = 0; c < cols; ++c) {
    m.add_column({"w" + std::to_string(c + 1), -kInf, kInf});
  }
  for (std::size_t j = 0; j < set.B.size(); ++j) {
    if (set.B[j].size() != cols) throw Error(Errc::InvalidArgument, "ragged B");
    Row r;
    for (std::size_t c = 0; c < cols; ++c) {
      if (set.B[j][c] != 0.0) r.coeffs.emplace_back(static_cast<int>(c), set.B[j][c]);
    }
    r.lower = set.d[j];
    m.rows.push_back(std::move(r));
  }
  SolveParams params;
  for (int k = 0; k < set.num_weights; ++k) {
    for (bool maximize : {false, true}) {
      m.objective = Objective{maximize, {{k, 1.0}}, 0.0};
      const Solution s = backend.solve(m, params);
      if (s.status == SolveStatus::Infeasible) {
        throw Error(Errc::EmptyUncertainty, "weight set is empty");
      }
      if (s.status != SolveStatus::Optimal || s.objective < -1e-9 ||
          s.objective > 1.0 + 1e-9) {
        throw Error(Errc::WeightsNotSimplex, "weight " + std::to_string(k + 1) +
                                                 " can leave [0, 1]");
      }
    }
  }
}

ModelIR build_robust(std::span<const Segment> segments, const Uncertainty& set,
                     const ConstraintSet& constraints, Backend& backend) {
  check_uncertainty(set, backend);
  if (static_cast<std::size_t>(set.num_weights) != segments.size()) {
    throw Error(Errc::InvalidArgument, "weight count differs from segment count");
  }
  const int n = segments.front().graph.num_products();
  ModelIR m;
  m.kind = ModelKind::Perspective;
  add_x_columns(m, n);
  for (std::size_t k = 0; k < segments.size(); ++k) {
    if (segments[k].graph.num_products() != n) {
      throw Error(Errc::InvalidArgument, "segments disagree on N");
    }
    add_perspective_block(m, segments[k].graph, rmc_relaxation(segments[k].graph),
                          static_cast<int>(k));
  }
  add_constraints(m, constraints, n);
  for (std::size_t k = 0; k < segments.size(); ++k) {
    add_homogenized_constraints(m, constraints, static_cast<int>(k));
  }
  std::vector<int> dual;
  for (std::size_t j = 0; j < set.B.size(); ++j) {
    dual.push_back(m.add_column({"dual_" + std::to_string(j + 1), 0.0, kInf}));
  }
  for (std::size_t c = 0; c < set.num_cols(); ++c) {
    Row r;
    for (std::size_t j = 0; j < set.B.size(); ++j) {
      if (set.B[j][c] != 0.0) r.coeffs.emplace_back(dual[j], set.B[j][c]);
    }
    if (c < segments.size()) {
      const int seg = static_cast<int>(c);
      for (const Edge& e : segments[c].graph.edges()) {
        const double coef = e.revenue * e.attraction;
        if (coef != 0.0) r.coeffs.emplace_back(m.column(Var::y(e.bundle), seg), -coef);
      }
    }
    r.lower = r.upper = 0.0;
    m.rows.push_back(std::move(r));
  }
  m.objective.maximize = true;
  for (std::size_t j = 0; j < set.B.size(); ++j) {
    if (set.d[j] != 0.0) m.objective.coeffs.emplace_back(dual[j], set.d[j]);
  }
  return m;
}

}  // namespace logitmp
