#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "logitmp/bruteforce.hpp"
#include "logitmp/cutting_plane.hpp"
#include "logitmp/error.hpp"
#include "logitmp/estimation.hpp"
#include "logitmp/formulations.hpp"
#include "logitmp/instances.hpp"
#include "logitmp/relaxation.hpp"
#include "logitmp/solver_backend.hpp"

using namespace logitmp;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kTimeLimit = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 10;
  int d = 2;
  double theta = 0.25;
  double pi = 0.5;
  int k = 1;
  bool robust = false;
  std::uint64_t seed = 1;
  std::string formulation = "pers";
  std::string cuts;
  double time_limit = 3600.0;
  double gap = 5e-4;
  std::string out;
  int folds = 5;
  std::vector<std::string> inputs;
};

// Library errors caused by bad input map to the usage code.
int exit_code(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::SchemaVersionMismatch:
    case Errc::InvalidArgument:
    case Errc::InfeasibleCounts:
    case Errc::DegenerateFold:
    case Errc::NoTransactions:
    case Errc::TooLarge:
      return kUsage;
    default:
      return kFailure;
  }
}

std::string items_text(const Assortment& x) {
  std::string s;
  for (int i : assortment_items(x)) s += (s.empty() ? "" : ";") + std::to_string(i);
  return s.empty() ? "0" : s;
}

double final_gap_pct(const SolveReport& r) {
  if (r.mip_status == SolveStatus::Optimal) return 0.0;
  if (r.mip_status != SolveStatus::Feasible) return std::numeric_limits<double>::infinity();
  if (std::abs(r.mip_obj) < 1e-12) return 0.0;
  return 100.0 * (r.mip_bound - r.mip_obj) / std::abs(r.mip_obj);
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json report_json(const SolveReport& r, const std::string& formulation,
                 const std::string& cuts) {
  json j;
  j["formulation"] = formulation;
  j["cuts"] = cuts;
  j["status"] = std::string(status_name(r.mip_status));
  j["objective"] = r.mip_obj;
  j["bound"] = r.mip_bound;
  j["lp_initial"] = r.lp_obj_initial;
  j["lp_final"] = r.lp_obj_final;
  j["root_gap"] = finite_or_null(r.root_gap_pct);
  j["gap"] = finite_or_null(final_gap_pct(r));
  j["node_count"] = r.node_count;
  j["iterations"] = r.iterations;
  j["stalled"] = r.stalled;
  j["solve_time"] = r.solve_time_s;
  j["separation_time"] = r.sep_time_s;
  json added;
  for (auto f : {CutFamily::XLower, CutFamily::XUpper, CutFamily::OddCycle,
                 CutFamily::RunningIntersection}) {
    added[std::string(family_name(f))] = r.cuts_added[static_cast<std::size_t>(f)];
  }
  j["cuts_added"] = added;
  j["assortment"] = assortment_items(r.assortment);
  return j;
}

CutConfig parse_cuts(const std::string& text, const Hypergraph& graph) {
  CutConfig c;
  if (text.empty()) {
    c.odd_cycle = graph.rank() == 2;
    c.running_intersection = graph.rank() >= 3;
    return c;
  }
  bool rmc = false;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "rmc") {
      rmc = true;
    } else if (tok == "odd") {
      c.odd_cycle = true;
    } else if (tok == "ric") {
      c.running_intersection = true;
    } else {
      throw UsageError("unknown cut family '" + tok + "' (expected rmc, odd, ric)");
    }
  }
  if (!rmc) throw UsageError("--cuts must include rmc");
  return c;
}

std::string cuts_label(const CutConfig& c) {
  std::string s = "rmc";
  if (c.odd_cycle) s += ",odd";
  if (c.running_intersection) s += ",ric";
  return s;
}

SolveParams solve_params(const Options& o) {
  if (!(o.time_limit > 0)) throw UsageError("--time-limit must be positive");
  if (!(o.gap >= 0)) throw UsageError("--gap must be nonnegative");
  SolveParams p;
  p.time_limit_s = o.time_limit;
  p.rel_gap = o.gap;
  p.seed = static_cast<int>(o.seed % 2147483647u);
  return p;
}

struct Run {
  SolveReport report;
  std::string cuts;
};

Run run_formulation(const Instance& inst, const std::string& formulation,
                    const std::string& cuts, Backend& backend, const SolveParams& params) {
  Run run;
  if (inst.is_mixture() || inst.uncertainty) {
    if (formulation != "pers") {
      throw UsageError("mixture instances support only --formulation pers");
    }
    ModelIR m = inst.uncertainty
                    ? build_robust(inst.segments, *inst.uncertainty, inst.constraints, backend)
                    : build_mixture(inst.segments, inst.constraints);
    run.cuts = "rmc";
    run.report = solve_direct(m, backend, params);
    return run;
  }
  const Hypergraph& g = inst.graph();
  if (formulation == "pers") {
    const CutConfig c = parse_cuts(cuts, g);
    run.cuts = cuts_label(c);
    run.report = solve_with_cuts(g, inst.constraints, c, backend, params);
  } else if (formulation == "bigm" || formulation == "conic") {
    ModelIR m = build_bigm(g, rmc_relaxation(g), inst.constraints, default_bigm_bounds(g));
    if (formulation == "conic") add_conic(m, g);
    set_assortment_objective(m, g);
    run.cuts = "rmc";
    run.report = solve_direct(m, backend, params);
  } else {
    throw UsageError("unknown formulation '" + formulation + "' (expected pers, bigm, conic)");
  }
  return run;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::InvalidArgument, "cannot write " + path);
  f << text;
}

int cmd_generate(const Options& o) {
  GenSpec s;
  s.num_products = o.n;
  s.rank = o.d;
  s.theta = o.theta;
  s.pi = o.pi;
  s.seed = o.seed;
  s.segments = o.k;
  if (o.robust && o.k < 2) throw UsageError("--robust needs --k >= 2");
  Instance inst = o.k >= 2 ? generate_mixture(s) : generate_single(s);
  if (!o.robust) inst.uncertainty.reset();
  const std::string path = o.out.empty() ? "instance.json" : o.out;
  save_instance(inst, path);
  std::size_t edges = 0;
  for (const Segment& seg : inst.segments) edges += seg.graph.num_edges();
  std::printf("wrote %s: N=%d |E|=%zu d=%d theta=%g pi=%g K=%zu%s\n", path.c_str(),
              inst.num_products, edges, o.d, o.theta, o.pi, inst.segments.size(),
              inst.uncertainty ? " robust" : "");
  return kOk;
}

int status_exit(const SolveReport& r) {
  if (r.mip_status == SolveStatus::TimeLimit) return kTimeLimit;
  if (r.mip_status == SolveStatus::Optimal || r.mip_status == SolveStatus::Feasible) return kOk;
  return kFailure;
}

int cmd_solve(const Options& o) {
  if (o.inputs.size() != 1) throw UsageError("solve takes exactly one instance");
  const Instance inst = load_instance(o.inputs.front());
  auto backend = make_backend();
  const Run run = run_formulation(inst, o.formulation, o.cuts, *backend, solve_params(o));
  const SolveReport& r = run.report;
  json j = report_json(r, o.formulation, run.cuts);
  j["instance"] = o.inputs.front();
  std::printf("%-12s %s\n", "formulation", o.formulation.c_str());
  std::printf("%-12s %s\n", "cuts", run.cuts.c_str());
  std::printf("%-12s %s\n", "status", std::string(status_name(r.mip_status)).c_str());
  std::printf("%-12s %.10g\n", "objective", r.mip_obj);
  std::printf("%-12s %.10g -> %.10g\n", "lp bound", r.lp_obj_initial, r.lp_obj_final);
  std::printf("%-12s %.4f\n", "root gap %", r.root_gap_pct);
  std::printf("%-12s %lld\n", "nodes", r.node_count);
  std::printf("%-12s %d\n", "cuts", r.total_cuts());
  std::printf("%-12s %.3f\n", "time s", r.solve_time_s);
  std::printf("%-12s %s\n", "assortment", items_text(r.assortment).c_str());
  if (!o.out.empty()) write_text(o.out, j.dump(2) + "\n");
  else std::printf("%s\n", j.dump().c_str());
  return status_exit(r);
}

struct Tally {
  int solved = 0;
  int runs = 0;
  double time = 0.0;
  double gap = 0.0;
  double rgap = 0.0;
  double nodes = 0.0;
  int gap_runs = 0;
  int rgap_runs = 0;
};

int cmd_compare(const Options& o) {
  if (o.inputs.empty()) throw UsageError("compare needs at least one instance");
  auto backend = make_backend();
  const SolveParams params = solve_params(o);
  std::vector<std::string> models{"pers", "bigm"};
  if (backend->capabilities().cones) models.push_back("conic");
  std::vector<Tally> tally(models.size());
  json rows = json::array();
  int violations = 0;
  int code = kOk;
  for (const std::string& path : o.inputs) {
    const Instance inst = load_instance(path);
    const bool single = !inst.is_mixture() && !inst.uncertainty;
    std::optional<double> pers_lp, bigm_lp;
    for (std::size_t m = 0; m < models.size(); ++m) {
      if (!single && models[m] != "pers") continue;
      const Run run = run_formulation(inst, models[m], o.cuts, *backend, params);
      const SolveReport& r = run.report;
      Tally& t = tally[m];
      ++t.runs;
      t.solved += r.mip_status == SolveStatus::Optimal;
      t.time += r.solve_time_s;
      t.nodes += static_cast<double>(r.node_count);
      const double g = final_gap_pct(r);
      if (std::isfinite(g)) t.gap += g, ++t.gap_runs;
      if (std::isfinite(r.root_gap_pct)) t.rgap += r.root_gap_pct, ++t.rgap_runs;
      if (models[m] == "pers") pers_lp = r.lp_obj_final;
      if (models[m] == "bigm") bigm_lp = r.lp_obj_initial;
      json j = report_json(r, models[m], run.cuts);
      j["instance"] = path;
      rows.push_back(j);
      if (status_exit(r) != kOk) code = std::max(code, status_exit(r));
    }
    // The perspective relaxation is never weaker than Big-M.
    if (pers_lp && bigm_lp && *pers_lp > *bigm_lp + 1e-6 * std::max(1.0, std::abs(*bigm_lp))) {
      ++violations;
      std::printf("ordering violated on %s: pers bound %.10g above bigm bound %.10g\n",
                  path.c_str(), *pers_lp, *bigm_lp);
    }
  }
  std::printf("%-8s %6s %10s %10s %10s %10s\n", "model", "#sol", "Time", "Gap%", "RGap%",
              "#node");
  json table = json::array();
  for (std::size_t m = 0; m < models.size(); ++m) {
    const Tally& t = tally[m];
    if (t.runs == 0) continue;
    const double time = t.time / t.runs;
    const double gap = t.gap_runs ? t.gap / t.gap_runs : std::nan("");
    const double rgap = t.rgap_runs ? t.rgap / t.rgap_runs : std::nan("");
    const double nodes = t.nodes / t.runs;
    std::printf("%-8s %6d %10.3f %10.4f %10.4f %10.1f\n", models[m].c_str(), t.solved, time, gap,
                rgap, nodes);
    table.push_back({{"model", models[m]},
                     {"solved", t.solved},
                     {"runs", t.runs},
                     {"time", time},
                     {"gap", finite_or_null(gap)},
                     {"root_gap", finite_or_null(rgap)},
                     {"nodes", nodes}});
  }
  std::printf("ordering violations: %d\n", violations);
  if (!o.out.empty()) {
    json j{{"table", table}, {"runs", rows}, {"ordering_violations", violations}};
    write_text(o.out, j.dump(2) + "\n");
  }
  return code;
}

int cmd_estimate(const Options& o, bool theta_given, bool d_given) {
  if (o.inputs.size() != 3) {
    throw UsageError("estimate takes transactions, assortments and products CSV files");
  }
  if (o.folds < 2) throw UsageError("--folds must be at least 2");
  if (d_given && o.d < 1) throw UsageError("--d must be at least 1");
  if (theta_given && !(o.theta > 0 && o.theta <= 1)) throw UsageError("--theta must lie in (0, 1]");
  const TransactionData data = read_transactions(o.inputs[0], o.inputs[1], o.inputs[2]);
  const int max_d = d_given ? o.d : 3;
  std::vector<double> thetas = theta_given ? std::vector<double>{o.theta}
                                           : std::vector<double>{0.05, 0.1, 0.25, 0.5, 1.0};
  std::vector<Candidate> grid;
  for (int d = 2; d <= max_d && d <= data.num_products; ++d) {
    if (multi_bundle_count(data.num_products, d) > 5000000) break;
    for (double th : thetas) grid.push_back({d, th});
  }
  const std::vector<CvRow> rows = cross_validate(data, grid, o.folds);
  // Rows run from sparse to dense; near ties go to the sparser structure.
  double lowest = rows.front().chi2;
  for (const CvRow& r : rows) lowest = std::min(lowest, r.chi2);
  std::size_t best = 0;
  while (rows[best].chi2 > lowest * (1.0 + 1e-9) + 1e-12) ++best;
  const std::filesystem::path dir = o.out.empty() ? "." : o.out;
  std::filesystem::create_directories(dir);
  {
    std::ostringstream cv;
    write_cv_csv(rows, cv);
    write_text((dir / "cv.csv").string(), cv.str());
    std::printf("%s", cv.str().c_str());
  }
  const Candidate pick = rows[best].candidate;
  const Hypergraph structure = build_candidate_hypergraph(data, pick.d, pick.theta);
  const FitResult fit = fit_mle(data, structure);
  Instance inst;
  inst.num_products = data.num_products;
  inst.segments.push_back({*fit.fitted, 1.0});
  inst.meta = json{{"generator", "estimate"},
                   {"d", pick.d},
                   {"theta", pick.theta},
                   {"log_likelihood", fit.log_likelihood}}
                  .dump();
  const std::string model_path = (dir / "fitted.json").string();
  save_instance(inst, model_path);
  std::printf("best d=%d theta=%g, |E|=%zu, wrote %s\n", pick.d, pick.theta,
              inst.graph().num_edges(), model_path.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assortment optimization under the Logit-MP choice model"};
  app.require_subcommand(1);
  Options o;
  auto* gen = app.add_subcommand("generate", "Write a random instance");
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  auto* compare = app.add_subcommand("compare", "Compare formulations over instances");
  auto* estimate = app.add_subcommand("estimate", "Cross-validate and fit from transactions");

  gen->add_option("--n", o.n, "Number of products")->check(CLI::PositiveNumber);
  CLI::Option* d_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  gen->add_option("--d", o.d, "Bundle rank");
  gen->add_option("--theta", o.theta, "Sparsity level");
  gen->add_option("--pi", o.pi, "Share of cross-category bundles");
  gen->add_option("--k", o.k, "Number of segments")->check(CLI::PositiveNumber);
  gen->add_flag("--robust", o.robust, "Keep the weight uncertainty set");
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--out", o.out, "Output instance path");

  for (auto* sub : {solve, compare}) {
    sub->add_option("instances", o.inputs, "Instance files")->required();
    sub->add_option("--formulation", o.formulation, "pers, bigm or conic");
    sub->add_option("--cuts", o.cuts, "Comma list of rmc, odd, ric");
    sub->add_option("--time-limit", o.time_limit, "Seconds per solve");
    sub->add_option("--gap", o.gap, "Relative MIP gap");
    sub->add_option("--seed", o.seed, "Solver seed");
    sub->add_option("--out", o.out, "JSON report path");
  }

  estimate->add_option("files", o.inputs, "transactions.csv assortments.csv products.csv")
      ->required();
  d_opt = estimate->add_option("--d", o.d, "Largest bundle size in the grid");
  theta_opt = estimate->add_option("--theta", o.theta, "Single sparsity level");
  estimate->add_option("--folds", o.folds, "Cross-validation folds");
  estimate->add_option("--seed", o.seed, "Unused; estimation is deterministic");
  estimate->add_option("--out", o.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(o);
    if (solve->parsed()) return cmd_solve(o);
    if (compare->parsed()) return cmd_compare(o);
    return cmd_estimate(o, theta_opt->count() > 0, d_opt->count() > 0);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
}
