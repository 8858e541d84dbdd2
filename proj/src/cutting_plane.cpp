#include "logitmp/cutting_plane.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "logitmp/error.hpp"

namespace logitmp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Assortment rounded_x(const ModelIR& model, int n, const std::vector<double>& values) {
  Assortment x(static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= n; ++i) {
    x[static_cast<std::size_t>(i - 1)] = model.value(values, Var::x(i)) > 0.5 ? 1 : 0;
  }
  return x;
}

Solution solve_relaxation(Session& session) {
  Solution s = session.solve(true);
  if (s.status != SolveStatus::Optimal) {
    throw Error(Errc::BackendFailure,
                "LP relaxation ended " + std::string(status_name(s.status)));
  }
  return s;
}

void finish_mip(SolveReport& report, const Solution& mip, const ModelIR& model, int n) {
  report.mip_status = mip.status;
  report.node_count = mip.node_count;
  report.mip_bound = mip.best_bound;
  if (mip.has_values()) {
    report.mip_obj = mip.objective;
    report.assortment = rounded_x(model, n, mip.values);
    report.root_gap_pct = root_gap_pct(report.lp_obj_final, report.mip_obj);
  } else {
    report.root_gap_pct = std::numeric_limits<double>::quiet_NaN();
  }
}

int count_x(const ModelIR& model) {
  int n = 0;
  while (model.find_column(Var::x(n + 1).name())) ++n;
  return n;
}

}  // namespace

double root_gap_pct(double lp_obj, double mip_obj) {
  if (mip_obj > 1e-12) return 100.0 * (lp_obj - mip_obj) / mip_obj;
  if (std::abs(lp_obj - mip_obj) <= 1e-9) return 0.0;
  return std::numeric_limits<double>::infinity();
}

FractionalPoint point_from_solution(const ModelIR& model, const Hypergraph& graph,
                                    const std::vector<Bundle>& auxiliary,
                                    const std::vector<double>& values) {
  FractionalPoint p;
  p.rho = model.value(values, Var::rho());
  for (const Edge& e : graph.edges()) p.y[e.bundle] = model.value(values, Var::y(e.bundle));
  for (const Bundle& w : auxiliary) p.y[w] = model.value(values, Var::y(w));
  for (int i = 1; i <= graph.num_products(); ++i) p.x.push_back(model.value(values, Var::x(i)));
  return p;
}

SolveReport solve_with_cuts(const Hypergraph& graph, const ConstraintSet& constraints,
                            const CutConfig& config, Backend& backend,
                            const SolveParams& params, std::vector<CutLogEntry>* log) {
  if (config.max_iters < 1) throw Error(Errc::InvalidArgument, "max_iters must be >= 1");
  if (!(config.eps > backend.feasibility_tolerance())) {
    throw Error(Errc::InvalidArgument, "eps must exceed the backend feasibility tolerance");
  }
  const auto t_start = Clock::now();
  const Relaxation oracle = rmc_relaxation(graph);
  ModelIR model = build_base_perspective(graph, oracle, constraints);
  set_assortment_objective(model, graph);
  auto session = backend.open(model, params);

  std::vector<RIStructure> structures;
  if (config.running_intersection) structures = build_ri_structures(graph, config.m_bar);
  const bool has_pairs = std::any_of(graph.edges().begin(), graph.edges().end(),
                                     [](const Edge& e) { return e.bundle.size() == 2; });

  SolveReport report;
  std::unordered_set<std::string> pool;
  int flat = 0;
  Solution lp;
  for (int k = 1; k <= config.max_iters; ++k) {
    lp = solve_relaxation(*session);
    report.iterations = k;
    if (k == 1) report.lp_obj_initial = lp.objective;
    const double prev = report.lp_history.empty() ? lp.objective : report.lp_history.back();
    report.lp_history.push_back(lp.objective);
    report.lp_obj_final = lp.objective;

    const FractionalPoint point = point_from_solution(model, graph, oracle.auxiliary, lp.values);
    const auto t_sep = Clock::now();
    std::vector<Cut> found;
    if (config.x_bounds) found = separate_x_bounds(point, graph, config.eps);
    if (config.odd_cycle && has_pairs) {
      auto more = separate_odd_cycle(point, graph, config.eps);
      found.insert(found.end(), more.begin(), more.end());
    }
    if (config.running_intersection) {
      auto more = separate_running_intersection(point, structures, config.eps);
      found.insert(found.end(), more.begin(), more.end());
    }
    report.sep_time_s += seconds_since(t_sep);

    std::vector<Row> rows;
    for (Cut& c : found) {
      if (!pool.insert(canonical_form(c.row).str()).second) continue;
      rows.push_back(model.to_row(c.row));
      ++report.cuts_added[static_cast<std::size_t>(c.family)];
      if (log) log->push_back({k, std::move(c)});
    }
    if (rows.empty()) break;
    session->add_rows(rows);

    const double scale = std::max(1.0, std::abs(prev));
    flat = (k > 1 && std::abs(prev - lp.objective) <= 1e-12 * scale) ? flat + 1 : 0;
    if (flat >= config.stall_iters) {
      report.stalled = true;
      break;
    }
    if (report.sep_time_s > config.sep_time_limit_s) break;
    if (k == config.max_iters) break;
  }
  report.final_point = point_from_solution(model, graph, oracle.auxiliary, lp.values);
  finish_mip(report, session->solve(false), model, graph.num_products());
  report.solve_time_s = seconds_since(t_start);
  return report;
}

SolveReport solve_direct(const ModelIR& model, Backend& backend, const SolveParams& params) {
  const auto t_start = Clock::now();
  auto session = backend.open(model, params);
  SolveReport report;
  const Solution lp = solve_relaxation(*session);
  report.iterations = 1;
  report.lp_obj_initial = report.lp_obj_final = lp.objective;
  report.lp_history.push_back(lp.objective);
  finish_mip(report, session->solve(false), model, count_x(model));
  report.solve_time_s = seconds_since(t_start);
  return report;
}

}  // namespace logitmp
