// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "logitmp/bruteforce.hpp"
#include "logitmp/choice_model.hpp"
#include "logitmp/cutting_plane.hpp"
#include "logitmp/error.hpp"
#include "logitmp/estimation.hpp"
#include "logitmp/formulations.hpp"
#include "logitmp/instances.hpp"
#include "logitmp/relaxation.hpp"
#include "logitmp/separation.hpp"
#include "logitmp/solver_backend.hpp"
#include "oracles.hpp"

using namespace logitmp;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    detail = ok ? why : detail + "; " + why;
    ok = false;
  }
};

// Cuts collected for the soundness sweep, keyed by the instance they came from.
struct LoggedCuts {
  Hypergraph graph;
  std::vector<LinearRow> rows;
};
std::vector<LoggedCuts> g_cut_log;

void log_cuts(const Hypergraph& g, const std::vector<CutLogEntry>& log) {
  if (g.num_products() > 12 || log.empty()) return;
  LoggedCuts entry{g, {}};
  for (const CutLogEntry& e : log) entry.rows.push_back(e.cut.row);
  g_cut_log.push_back(std::move(entry));
}

void log_cuts(const Hypergraph& g, const std::vector<Cut>& cuts) {
  if (g.num_products() > 12 || cuts.empty()) return;
  LoggedCuts entry{g, {}};
  for (const Cut& c : cuts) entry.rows.push_back(c.row);
  g_cut_log.push_back(std::move(entry));
}

SolveParams exact_params() {
  SolveParams p;
  p.rel_gap = 0.0;
  p.abs_gap = 1e-10;
  return p;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct ExactnessCase {
  Hypergraph graph;
  ConstraintSet constraints;
  int cap = -1;
};

std::vector<ExactnessCase> exactness_cases() {
  std::vector<ExactnessCase> out;
  for (unsigned s = 0; s < 50; ++s) {
    std::mt19937 gen(1000 + s);
    const int n = 4 + static_cast<int>(s % 7);
    const int d = 2 + static_cast<int>(s % 2);
    const int m = 3 + static_cast<int>(gen() % 8);
    ExactnessCase c{fixtures::random_instance(gen, n, d, m), {}, -1};
    if (gen() % 5 != 0) {
      c.cap = 1 + static_cast<int>(gen() % static_cast<unsigned>(n));
      c.constraints = ConstraintSet::cardinality(n, c.cap);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::function<bool(std::uint64_t)> feasible_of(int cap) {
  if (cap < 0) return [](std::uint64_t) { return true; };
  return oracle::cap_filter(cap);
}

Verdict criterion1(Backend& be) {
  Verdict v;
  const auto t0 = Clock::now();
  int checked = 0;
  for (const ExactnessCase& c : exactness_cases()) {
    const Hypergraph& g = c.graph;
    const auto raw = oracle::raw_edges(g);
    const double truth = oracle::best_assortment(g.num_products(), raw, feasible_of(c.cap)).value;
    const double enumerated = brute_force_optimum(g, c.constraints).value;
    if (std::abs(truth - enumerated) > 1e-9) v.fail(fmt("enumeration %.9g vs oracle %.9g", enumerated, truth));

    std::vector<CutLogEntry> log;
    const SolveReport pers = solve_with_cuts(g, c.constraints, CutConfig{}, be, exact_params(), &log);
    log_cuts(g, log);
    ModelIR bm = build_bigm(g, rmc_relaxation(g), c.constraints, default_bigm_bounds(g));
    set_assortment_objective(bm, g);
    const SolveReport bigm = solve_direct(bm, be, exact_params());
    if (std::abs(pers.mip_obj - truth) > 1e-6) {
      v.fail(fmt("perspective %.9g vs optimum %.9g", pers.mip_obj, truth));
    }
    if (std::abs(bigm.mip_obj - truth) > 1e-6) {
      v.fail(fmt("Big-M %.9g vs optimum %.9g", bigm.mip_obj, truth));
    }
    // The reported assortment must achieve the optimum too.
    if (std::abs(expected_revenue(g, pers.assortment) - truth) > 1e-6) {
      v.fail("perspective assortment is not optimal");
    }
    ++checked;
  }
  const double t = seconds_since(t0);
  if (t > 120.0) v.fail(fmt("took %.1f s", t));
  if (v.ok) v.detail = fmt("%.0f instances, %.2f s", checked, t);
  return v;
}

double lp_value(const ModelIR& m, Backend& be) {
  const Solution s = be.solve(lp_relax(m), exact_params());
  if (s.status != SolveStatus::Optimal) throw Error(Errc::BackendFailure, "LP not optimal");
  return s.objective;
}

double pers_lp(const Hypergraph& g, const ConstraintSet& x, Backend& be) {
  ModelIR m = build_base_perspective(g, rmc_relaxation(g), x);
  set_assortment_objective(m, g);
  return lp_value(m, be);
}

double bigm_lp(const Hypergraph& g, const ConstraintSet& x, Backend& be) {
  ModelIR m = build_bigm(g, rmc_relaxation(g), x, {0.0, 1.0});
  set_assortment_objective(m, g);
  return lp_value(m, be);
}

Verdict criterion2(Backend& be) {
  Verdict v;
  double worst = -1e300;
  for (const ExactnessCase& c : exactness_cases()) {
    const double a = pers_lp(c.graph, c.constraints, be);
    const double b = bigm_lp(c.graph, c.constraints, be);
    worst = std::max(worst, a - b);
    if (a > b + 1e-8) v.fail(fmt("perspective LP %.12g above Big-M LP %.12g", a, b));
  }
  const Hypergraph pair = fixtures::two_item_pair();
  const double a = pers_lp(pair, {}, be), b = bigm_lp(pair, {}, be);
  if (!(a < b - 1e-8)) v.fail(fmt("pair instance not strict: %.12g vs %.12g", a, b));
  if (v.ok) v.detail = fmt("max LP(pers) - LP(bigm) = %.3g; pair %.6g < %.6g", worst, a, b);
  return v;
}

// Fixes (rho, y) of the model to the given values and asks for any feasible
// completion.
bool feasible_with_fixed(ModelIR m, const std::map<std::string, double>& fixed, Backend& be) {
  for (const auto& [name, value] : fixed) {
    Column& col = m.columns[static_cast<std::size_t>(*m.find_column(name))];
    col.lower = col.upper = value;
  }
  m.objective = {};
  const Solution s = be.solve(lp_relax(m), exact_params());
  return s.status == SolveStatus::Optimal;
}

Verdict criterion3(Backend& be) {
  Verdict v;
  const Hypergraph g = Hypergraph::create(2, {{{1}, 1, 2}, {{2}, 1, 3}, {{1, 2}, 1, 5}});
  const ChoicePoint point{0.5, {0.0, 0.0, 0.5}};
  if (hull_membership(point, g, be)) v.fail("point reported inside the hull");
  const std::map<std::string, double> fixed{
      {"rho", 0.5}, {"y_1", 0.0}, {"y_2", 0.0}, {"y_1_2", 0.5}};
  if (!feasible_with_fixed(build_bigm(g, rmc_relaxation(g), {}, {0.0, 1.0}), fixed, be)) {
    v.fail("point violates the Big-M LP");
  }
  if (feasible_with_fixed(build_base_perspective(g, rmc_relaxation(g), {}), fixed, be)) {
    v.fail("point satisfies the perspective LP");
  }
  // Independent check of hull membership: y_12 <= min(y_1, y_2) is valid for
  // every point of the choice set and cuts the point off.
  for (std::uint64_t m = 0; m < 4; ++m) {
    const auto raw = oracle::raw_edges(g);
    if (oracle::cg_value(raw, m, {1, 2}) >
        std::min(oracle::cg_value(raw, m, {1}), oracle::cg_value(raw, m, {2})) + 1e-12) {
      v.fail("reference inequality invalid");
    }
  }
  if (v.ok) v.detail = "outside the hull, inside Big-M LP, outside perspective LP";
  return v;
}

// ---- structured instances ----

using Graph = std::vector<std::pair<int, int>>;

// K4-minor-free test by series / parallel / degree-one reductions.
bool series_parallel(int n, const Graph& edges) {
  std::set<std::pair<int, int>> e;
  for (auto [a, b] : edges) e.insert({std::min(a, b), std::max(a, b)});
  std::vector<char> alive(static_cast<std::size_t>(n + 1), 1);
  alive[0] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u = 1; u <= n; ++u) {
      if (!alive[static_cast<std::size_t>(u)]) continue;
      std::vector<int> nb;
      for (auto [a, b] : e) {
        if (a == u) nb.push_back(b);
        if (b == u) nb.push_back(a);
      }
      if (nb.size() <= 2) {
        for (int w : nb) e.erase({std::min(u, w), std::max(u, w)});
        if (nb.size() == 2) e.insert({std::min(nb[0], nb[1]), std::max(nb[0], nb[1])});
        alive[static_cast<std::size_t>(u)] = 0;
        changed = true;
      }
    }
  }
  return std::none_of(alive.begin(), alive.end(), [](char c) { return c != 0; });
}

Hypergraph random_weights(int n, const std::vector<Bundle>& multi, std::mt19937& gen) {
  std::uniform_real_distribution<double> u(-1.5, 1.0), r(1.0, 5.0);
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) edges.push_back({Bundle{i}, std::exp(u(gen)), r(gen)});
  for (const Bundle& b : multi) edges.push_back({b, std::exp(u(gen)), r(gen)});
  return Hypergraph::create(n, std::move(edges));
}

std::vector<Bundle> bundles_of(const Graph& g) {
  std::set<Bundle> out;
  for (auto [a, b] : g) out.insert(Bundle{a, b});
  return {out.begin(), out.end()};
}

// Two-terminal series-parallel graph built by random compositions.
Graph random_sp(std::mt19937& gen, int max_nodes, int& n) {
  struct Part {
    int s, t;
    Graph edges;
  };
  n = 2;
  std::vector<Part> parts{{1, 2, {{1, 2}}}};
  while (n < max_nodes) {
    Part& p = parts[gen() % parts.size()];
    if (gen() % 2 == 0) {
      // subdivide the first edge of the part (series step)
      auto [a, b] = p.edges.front();
      const int w = ++n;
      p.edges.erase(p.edges.begin());
      p.edges.push_back({a, w});
      p.edges.push_back({w, b});
    } else {
      // parallel path of length two between the terminals
      const int w = ++n;
      p.edges.push_back({p.s, w});
      p.edges.push_back({w, p.t});
    }
  }
  return parts.front().edges;
}

std::vector<Hypergraph> series_parallel_instances(Verdict& v) {
  std::vector<Hypergraph> out;
  std::mt19937 gen(404);
  for (int k = 0; k < 20; ++k) {
    Graph g;
    int n = 0;
    switch (k % 5) {
      case 0:  // path
        n = 4 + k / 5;
        for (int i = 1; i < n; ++i) g.push_back({i, i + 1});
        break;
      case 1:  // cycle
        n = 3 + 2 * (k / 5);
        for (int i = 1; i < n; ++i) g.push_back({i, i + 1});
        g.push_back({1, n});
        break;
      case 2: {  // theta graph: three internally disjoint paths between 1 and 2
        n = 2;
        for (int path = 0; path < 3; ++path) {
          const int len = 1 + path + (k / 5) % 2;
          int prev = 1;
          for (int step = 1; step < len; ++step) {
            g.push_back({prev, ++n});
            prev = n;
          }
          if (len > 1 || path == 0) g.push_back({prev, 2});
        }
        break;
      }
      case 3: {  // tree
        n = 6 + k / 5;
        for (int i = 2; i <= n; ++i) g.push_back({1 + static_cast<int>(gen() % (i - 1)), i});
        break;
      }
      default:
        g = random_sp(gen, 6 + k / 5, n);
        break;
    }
    if (!series_parallel(n, g)) v.fail("constructed graph is not series-parallel");
    out.push_back(random_weights(n, bundles_of(g), gen));
  }
  return out;
}

// Nest-point elimination: succeeds exactly on beta-acyclic hypergraphs.
bool beta_acyclic(std::vector<std::set<int>> edges) {
  while (true) {
    std::set<int> vertices;
    for (const auto& e : edges) vertices.insert(e.begin(), e.end());
    if (vertices.empty()) return true;
    bool removed = false;
    for (int u : vertices) {
      std::vector<const std::set<int>*> with;
      for (const auto& e : edges) {
        if (e.count(u)) with.push_back(&e);
      }
      std::sort(with.begin(), with.end(), [](auto* a, auto* b) { return a->size() < b->size(); });
      bool chain = true;
      for (std::size_t i = 1; i < with.size() && chain; ++i) {
        chain = std::includes(with[i]->begin(), with[i]->end(), with[i - 1]->begin(), with[i - 1]->end());
      }
      if (!chain) continue;
      for (auto& e : edges) e.erase(u);
      removed = true;
      break;
    }
    if (!removed) return false;
  }
}

bool kite_free(const std::vector<std::set<int>>& edges) {
  auto inter = [](const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  };
  auto minus = [](const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  };
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = 0; b < edges.size(); ++b) {
      for (std::size_t c = 0; c < edges.size(); ++c) {
        if (a == b || a == c || b == c) continue;
        const auto ab = inter(edges[a], edges[b]), ac = inter(edges[a], edges[c]);
        if (inter(ab, edges[c]).size() >= 2 && !minus(ab, edges[c]).empty() &&
            !minus(ac, edges[b]).empty()) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<Hypergraph> nested_chain_instances(Verdict& v) {
  std::vector<Hypergraph> out;
  std::mt19937 gen(505);
  while (out.size() < 20) {
    std::set<Bundle> multi{Bundle{1, 2, 3}};
    int n = 3;
    const int steps = 2 + static_cast<int>(gen() % 4);
    for (int s = 0; s < steps; ++s) {
      std::vector<Bundle> triples;
      for (const Bundle& b : multi) {
        if (b.size() == 3) triples.push_back(b);
      }
      if (gen() % 3 == 0 && !triples.empty()) {
        // a pair nested inside an existing triple
        const Bundle& t = triples[gen() % triples.size()];
        std::vector<int> items(t.items().begin(), t.items().end());
        items.erase(items.begin() + static_cast<long>(gen() % 3));
        multi.insert(Bundle(items));
      } else if (n + 2 <= 10) {
        // a new triple or pair hanging off one existing item
        const int anchor = 1 + static_cast<int>(gen() % static_cast<unsigned>(n));
        std::vector<int> items{anchor, ++n};
        if (gen() % 2 == 0) items.push_back(++n);
        multi.insert(Bundle(items));
      }
    }
    std::vector<std::set<int>> sets;
    for (int i = 1; i <= n; ++i) sets.push_back({i});
    for (const Bundle& b : multi) sets.emplace_back(b.items().begin(), b.items().end());
    if (!beta_acyclic(sets) || !kite_free(sets)) continue;
    out.push_back(random_weights(n, {multi.begin(), multi.end()}, gen));
  }
  if (out.size() != 20) v.fail("could not build the structured instances");
  return out;
}

void check_sharp(const std::vector<Hypergraph>& graphs, const CutConfig& config, Backend& be,
                 Verdict& v, double& worst) {
  for (const Hypergraph& g : graphs) {
    const double truth = oracle::best_assortment(g.num_products(), oracle::raw_edges(g),
                                                 [](std::uint64_t) { return true; })
                             .value;
    std::vector<CutLogEntry> log;
    const SolveReport r = solve_with_cuts(g, {}, config, be, exact_params(), &log);
    log_cuts(g, log);
    worst = std::max(worst, std::abs(r.lp_obj_final - truth));
    if (std::abs(r.lp_obj_final - truth) > 1e-6) {
      v.fail(fmt("LP bound %.10g vs optimum %.10g (N = %.0f)", r.lp_obj_final, truth,
                 g.num_products()));
    }
    if (std::abs(r.mip_obj - truth) > 1e-6) v.fail("MIP optimum differs from enumeration");
  }
}

Verdict criterion4(Backend& be) {
  Verdict v;
  const auto t0 = Clock::now();
  CutConfig odd;
  odd.odd_cycle = true;
  odd.eps = 1e-8;
  odd.max_iters = 2000;
  CutConfig ric;
  ric.running_intersection = true;
  ric.eps = 1e-8;
  ric.m_bar = 4;
  ric.max_iters = 2000;
  double worst_sp = 0.0, worst_nested = 0.0;
  check_sharp(series_parallel_instances(v), odd, be, v, worst_sp);
  check_sharp(nested_chain_instances(v), ric, be, v, worst_nested);
  const double t = seconds_since(t0);
  if (t > 300.0) v.fail(fmt("took %.1f s", t));
  if (v.ok) {
    v.detail = fmt("20 + 20 instances, max LP gap %.2g / %.2g, %.2f s", worst_sp, worst_nested, t);
  }
  return v;
}

FractionalPoint mccormick_point(std::mt19937& gen, const Hypergraph& g) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FractionalPoint p;
  p.rho = 0.2 + 0.8 * u(gen);
  for (int i = 1; i <= g.num_products(); ++i) p.y[Bundle{i}] = p.rho * u(gen);
  for (const Edge& e : g.edges()) {
    if (e.bundle.size() != 2) continue;
    const double a = p.y[Bundle{e.bundle.front()}], b = p.y[Bundle{e.bundle.back()}];
    const double lo = std::max(0.0, a + b - p.rho), hi = std::min(a, b);
    p.y[e.bundle] = lo + (hi - lo) * u(gen);
  }
  p.x.assign(static_cast<std::size_t>(g.num_products()), 0.5);
  return p;
}

Verdict criterion5() {
  Verdict v;
  int positives = 0, points = 0;
  for (unsigned s = 0; s < 30; ++s) {
    std::mt19937 gen(700 + s);
    const int n = 4 + static_cast<int>(s % 6);
    Graph graph;
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        if (gen() % 2 == 0) graph.push_back({a, b});
      }
    }
    const Hypergraph g = random_weights(n, bundles_of(graph), gen);
    for (int k = 0; k < 5; ++k) {
      const FractionalPoint p = mccormick_point(gen, g);
      std::vector<double> y_node(static_cast<std::size_t>(n + 1));
      for (int i = 1; i <= n; ++i) y_node[static_cast<std::size_t>(i)] = p.y_of(Bundle{i});
      const double best = oracle::max_odd_cycle_violation(
          n, p.rho, y_node, graph, [&](int a, int b) { return p.y_of(Bundle{a, b}); }, n + 1);
      const auto cuts = separate_odd_cycle(p, g, 1e-6);
      log_cuts(g, cuts);
      ++points;
      const bool expected = best > 1e-6;
      positives += expected;
      if (expected != !cuts.empty()) {
        v.fail(fmt("instance %.0f: enumeration %.3g, oracle returned %.0f cuts", s, best,
                   static_cast<double>(cuts.size())));
      }
      double found = 0.0;
      for (const Cut& c : cuts) found = std::max(found, c.violation);
      if (expected && std::abs(found - best) > 1e-9) {
        v.fail(fmt("most violated cut %.12g vs enumeration %.12g", found, best));
      }
    }
  }
  if (v.ok) v.detail = fmt("%.0f points, %.0f with violated cycles", points, positives);
  return v;
}

Verdict criterion6() {
  Verdict v;
  const Hypergraph g = fixtures::nested_six();
  const auto structures = build_ri_structures(g, 3);
  const LinearRow expected = canonical_form(LinearRow{{{Var::y(Bundle{1, 2}), 1.0},
                                                       {Var::y(Bundle{2, 3}), 1.0},
                                                       {Var::y(Bundle{3, 4, 5}), 1.0},
                                                       {Var::y(Bundle{6}), 1.0},
                                                       {Var::rho(), -1.0},
                                                       {Var::y(Bundle{1, 2, 3, 4, 5, 6}), -1.0},
                                                       {Var::y(Bundle{2}), -1.0},
                                                       {Var::y(Bundle{3}), -1.0}},
                                                      Sense::Le,
                                                      0.0});
  for (double rho : {0.1, 0.3, 0.5, 0.9}) {
    FractionalPoint p;
    p.rho = rho;
    for (const Edge& e : g.edges()) p.y[e.bundle] = 0.0;
    for (auto b : {Bundle{1, 2}, Bundle{2, 3}, Bundle{3, 4, 5}}) p.y[b] = rho;
    p.x.assign(6, 0.0);
    const auto cuts = separate_running_intersection(p, structures, 1e-6);
    log_cuts(g, cuts);
    bool found = false;
    for (const Cut& c : cuts) {
      if (canonical_form(c.row).str() != expected.str()) continue;
      found = true;
      if (std::abs(c.violation - 2 * rho) > 1e-9) {
        v.fail(fmt("violation %.12g, expected %.12g", c.violation, 2 * rho));
      }
    }
    if (!found) v.fail(fmt("inequality not returned at rho = %.2f", rho));
  }
  if (v.ok) v.detail = "violation 2 rho at rho in {0.1, 0.3, 0.5, 0.9}";
  return v;
}

Verdict criterion7(Backend& be) {
  Verdict v;
  double worst_gap = 0.0, worst_time = 0.0;
  long long worst_nodes = 0;
  for (int s = 1; s <= 5; ++s) {
    GenSpec spec;
    spec.num_products = 100;
    spec.rank = 2;
    spec.theta = 0.25;
    spec.pi = s % 2 == 0 ? 1.0 : 0.0;
    spec.seed = static_cast<std::uint64_t>(s);
    const Instance inst = generate_single(spec);
    CutConfig c;
    c.odd_cycle = true;
    const auto t0 = Clock::now();
    const SolveReport r = solve_with_cuts(inst.graph(), inst.constraints, c, be, SolveParams{});
    const double t = seconds_since(t0);
    worst_gap = std::max(worst_gap, r.root_gap_pct);
    worst_nodes = std::max(worst_nodes, r.node_count);
    worst_time = std::max(worst_time, t);
    std::printf("  instance seed %d pi %.0f: root gap %.4f%%, nodes %lld, cuts %d, %.1f s\n", s,
                spec.pi, std::max(0.0, r.root_gap_pct), r.node_count, r.total_cuts(), t);
    if (r.mip_status != SolveStatus::Optimal) v.fail("MIP not solved to optimality");
    if (!(r.root_gap_pct <= 0.1)) v.fail(fmt("root gap %.4f%% (seed %.0f)", r.root_gap_pct, s));
    if (r.node_count > 10) v.fail(fmt("%.0f nodes (seed %.0f)", static_cast<double>(r.node_count), s));
    if (t > 600.0) v.fail(fmt("%.1f s (seed %.0f)", t, s));
  }
  if (v.ok) {
    v.detail = fmt("max root gap %.4f%%, max nodes %.0f, max %.1f s", worst_gap,
                   static_cast<double>(worst_nodes), worst_time);
  }
  return v;
}

Verdict criterion8(Backend& be) {
  Verdict v;
  for (int s = 0; s < 10; ++s) {
    GenSpec spec;
    spec.num_products = 6 + s % 3;
    spec.rank = 2 + s % 2;
    spec.theta = 0.3;
    spec.pi = 0.5;
    spec.segments = 2;
    spec.seed = static_cast<std::uint64_t>(50 + s);
    Instance inst;
    try {
      inst = generate_mixture(spec);
    } catch (const Error&) {
      spec.pi = 1.0;
      inst = generate_mixture(spec);
    }
    const int n = inst.num_products;
    std::vector<std::vector<oracle::RawEdge>> raw;
    std::vector<double> weights;
    for (const Segment& seg : inst.segments) {
      raw.push_back(oracle::raw_edges(seg.graph));
      weights.push_back(seg.weight);
    }
    const int cap = static_cast<int>(std::floor(spec.cap_fraction * n + 1e-9));
    const double nominal = oracle::best_mixture(n, raw, weights, oracle::cap_filter(cap)).value;
    ModelIR mix = build_mixture(inst.segments, inst.constraints);
    const SolveReport rm = solve_direct(mix, be, exact_params());
    if (std::abs(rm.mip_obj - nominal) > 1e-6) {
      v.fail(fmt("mixture %.10g vs enumeration %.10g", rm.mip_obj, nominal));
    }
    ModelIR rob = build_robust(inst.segments, *inst.uncertainty, inst.constraints, be);
    const SolveReport rr = solve_direct(rob, be, exact_params());
    const double robust = robust_brute_force(inst.segments, *inst.uncertainty, inst.constraints, be).value;
    if (std::abs(rr.mip_obj - robust) > 1e-6) {
      v.fail(fmt("robust %.10g vs enumeration %.10g", rr.mip_obj, robust));
    }
    if (robust > nominal + 1e-9) v.fail("worst case above the nominal optimum");
  }
  if (v.ok) v.detail = "10 instances, nominal and worst-case optima match enumeration";
  return v;
}

Verdict criterion9() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto products = fixtures::products8();
  const Hypergraph truth = fixtures::truth8(products);
  const TransactionData data = simulate_transactions(truth, products, 1000, 100, 0.7, 2024);
  const FitResult fit = fit_mle(data, truth);
  double worst = 0.0;
  for (std::size_t e = 0; e < truth.num_edges(); ++e) {
    worst = std::max(worst, std::abs(fit.utilities[e] - std::log(truth.edge(e).attraction)));
  }
  if (worst > 0.05) v.fail(fmt("utility error %.4f", worst));
  const auto rows = cross_validate(data, {{2, 6.0 / 28.0}}, 5);
  if (rows.size() != 2 || !(rows[1].chi2 < rows[0].chi2)) {
    v.fail(fmt("chi2 true %.6g vs baseline %.6g", rows.back().chi2, rows.front().chi2));
  }
  const double t = seconds_since(t0);
  if (t > 180.0) v.fail(fmt("took %.1f s", t));
  if (v.ok) {
    v.detail = fmt("max utility error %.4f, chi2 %.4g vs baseline %.4g", worst, rows[1].chi2,
                   rows[0].chi2);
  }
  return v;
}

Verdict criterion10() {
  Verdict v;
  std::size_t rows = 0;
  double worst = -1e300;
  for (const LoggedCuts& entry : g_cut_log) {
    const auto raw = oracle::raw_edges(entry.graph);
    const std::uint64_t count = std::uint64_t{1} << entry.graph.num_products();
    for (const LinearRow& row : entry.rows) {
      ++rows;
      for (std::uint64_t m = 0; m < count; ++m) {
        const double viol = oracle::row_violation_at(row, raw, m);
        worst = std::max(worst, viol);
        if (viol > 1e-9) v.fail("cut " + row.str() + " violated by a choice-set point");
      }
    }
  }
  if (rows == 0) v.fail("no cuts were logged");
  if (v.ok) v.detail = fmt("%.0f cuts, max violation %.3g", static_cast<double>(rows), worst);
  return v;
}

}  // namespace

int main() {
  auto be = make_backend();
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {"exact optima against enumeration", [&] { return criterion1(*be); }},
      {"perspective LP never above Big-M LP", [&] { return criterion2(*be); }},
      {"Big-M LP point outside the hull", [&] { return criterion3(*be); }},
      {"LP-exact on series-parallel and nested instances", [&] { return criterion4(*be); }},
      {"odd-cycle oracle matches cycle enumeration", [] { return criterion5(); }},
      {"running intersection cut on the nested example", [] { return criterion6(); }},
      {"root gap and nodes at N = 100", [&] { return criterion7(*be); }},
      {"mixture and robust optima", [&] { return criterion8(*be); }},
      {"estimation recovery and ranking", [] { return criterion9(); }},
      {"every logged cut is valid on the choice set", [] { return criterion10(); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    failed += !v.ok;
    std::printf("%s %2zu %s: %s\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].name,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
