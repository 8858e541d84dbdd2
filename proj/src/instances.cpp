#include "logitmp/instances.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "logitmp/error.hpp"
#include "logitmp/rng.hpp"

namespace logitmp {

using nlohmann::json;

namespace {

constexpr std::uint64_t kPoolLimit = 20'000'000;

std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  long double r = 1.0L;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(std::llround(r));
}

void check_spec(const GenSpec& s) {
  if (s.num_products < 1) throw Error(Errc::InvalidArgument, "N must be positive");
  if (s.rank < 1 || s.rank > s.num_products) {
    throw Error(Errc::InvalidArgument, "rank must lie in [1, N]");
  }
  if (!(s.theta > 0.0 && s.theta <= 1.0)) {
    throw Error(Errc::InvalidArgument, "theta must lie in (0, 1]");
  }
  if (!(s.pi >= 0.0 && s.pi <= 1.0)) throw Error(Errc::InvalidArgument, "pi must lie in [0, 1]");
  if (s.categories < 1) throw Error(Errc::InvalidArgument, "need at least one category");
}

// All bundles with 2..rank items in canonical order.
std::vector<Bundle> multi_bundles(int n, int rank) {
  if (multi_bundle_count(n, rank) > kPoolLimit) {
    throw Error(Errc::TooLarge, "candidate bundle pool is too large");
  }
  std::vector<Bundle> out;
  for (int size = 2; size <= rank; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k) pick[static_cast<std::size_t>(k)] = k + 1;
    for (;;) {
      out.emplace_back(pick);
      int j = size - 1;
      while (j >= 0 && pick[static_cast<std::size_t>(j)] == n - size + j + 1) --j;
      if (j < 0) break;
      ++pick[static_cast<std::size_t>(j)];
      for (int k = j + 1; k < size; ++k) {
        pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
      }
    }
  }
  return out;
}

bool is_cross(const Bundle& b, const std::vector<int>& category) {
  const int c0 = category[static_cast<std::size_t>(b.front() - 1)];
  for (int i : b.items()) {
    if (category[static_cast<std::size_t>(i - 1)] != c0) return true;
  }
  return false;
}

// v_e = exp(sum alpha_i + sum beta_ij); alpha drawn for every item, beta
// for each pair inside some bundle (canonical pair order).
std::vector<Edge> draw_attractions(int n, const std::vector<Bundle>& bundles,
                                   SplitMix64& rng) {
  std::vector<double> alpha(static_cast<std::size_t>(n));
  for (double& a : alpha) a = rng.uniform(-1.5, 0.5);
  std::set<std::pair<int, int>> pairs;
  for (const Bundle& b : bundles) {
    const auto items = b.items();
    for (std::size_t s = 0; s < items.size(); ++s) {
      for (std::size_t t = s + 1; t < items.size(); ++t) pairs.insert({items[s], items[t]});
    }
  }
  std::map<std::pair<int, int>, double> beta;
  for (const auto& p : pairs) beta[p] = rng.uniform(-1.25, 0.75);
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) {
    edges.push_back({Bundle::singleton(i), std::exp(alpha[static_cast<std::size_t>(i - 1)]), 0.0});
  }
  for (const Bundle& b : bundles) {
    const auto items = b.items();
    double u = 0.0;
    for (std::size_t s = 0; s < items.size(); ++s) {
      u += alpha[static_cast<std::size_t>(items[s] - 1)];
      for (std::size_t t = s + 1; t < items.size(); ++t) u += beta[{items[s], items[t]}];
    }
    edges.push_back({b, std::exp(u), 0.0});
  }
  return edges;
}

void draw_revenues(std::vector<std::vector<Edge>*> edge_sets, int n, SplitMix64& rng) {
  std::vector<double> r(static_cast<std::size_t>(n));
  for (double& v : r) v = rng.uniform(1.0, 4.0);
  for (auto* edges : edge_sets) {
    for (Edge& e : *edges) {
      e.revenue = 0.0;
      for (int i : e.bundle.items()) e.revenue += r[static_cast<std::size_t>(i - 1)];
    }
  }
}

ConstraintSet cap_constraint(const GenSpec& s) {
  if (s.cap_fraction < 0) return {};
  const int cap = static_cast<int>(std::floor(s.cap_fraction * s.num_products + 1e-9));
  return ConstraintSet::cardinality(s.num_products, cap);
}

json spec_meta(const GenSpec& s, const char* kind, const std::vector<int>& category) {
  json m;
  m["generator"] = kind;
  m["n"] = s.num_products;
  m["d"] = s.rank;
  m["theta"] = s.theta;
  m["pi"] = s.pi;
  m["seed"] = s.seed;
  m["categories"] = category;
  return m;
}

}  // namespace

std::uint64_t multi_bundle_count(int num_products, int rank) {
  std::uint64_t total = 0;
  for (int k = 2; k <= rank; ++k) total += choose(num_products, k);
  return total;
}

BundleCounts bundle_counts(const GenSpec& spec) {
  check_spec(spec);
  BundleCounts c;
  const double target = spec.theta * static_cast<double>(multi_bundle_count(spec.num_products, spec.rank));
  c.total = static_cast<std::uint64_t>(std::floor(target + 0.5 + 1e-9));
  c.cross = static_cast<std::uint64_t>(std::ceil(spec.pi * static_cast<double>(c.total) - 1e-9));
  c.cross = std::min(c.cross, c.total);
  c.intra = c.total - c.cross;
  return c;
}

std::vector<int> assign_categories(int num_products, int categories, SplitMix64& rng) {
  std::vector<int> order(static_cast<std::size_t>(num_products));
  for (int i = 0; i < num_products; ++i) order[static_cast<std::size_t>(i)] = i + 1;
  rng.shuffle(order);
  std::vector<int> category(static_cast<std::size_t>(num_products));
  const int base = num_products / categories, extra = num_products % categories;
  std::size_t pos = 0;
  for (int c = 0; c < categories; ++c) {
    const int size = base + (c < extra ? 1 : 0);
    for (int k = 0; k < size; ++k) category[static_cast<std::size_t>(order[pos++] - 1)] = c;
  }
  return category;
}

Instance generate_single(const GenSpec& spec) {
  const BundleCounts counts = bundle_counts(spec);
  SplitMix64 rng(spec.seed);
  const auto category = assign_categories(spec.num_products, spec.categories, rng);
  std::vector<Bundle> cross, intra;
  if (counts.total > 0) {
    for (Bundle& b : multi_bundles(spec.num_products, spec.rank)) {
      (is_cross(b, category) ? cross : intra).push_back(std::move(b));
    }
  }
  if (counts.cross > cross.size() || counts.intra > intra.size()) {
    throw Error(Errc::InfeasibleCounts,
                "requested " + std::to_string(counts.cross) + " cross / " +
                    std::to_string(counts.intra) + " intra bundles, available " +
                    std::to_string(cross.size()) + " / " + std::to_string(intra.size()));
  }
  rng.shuffle(cross);
  rng.shuffle(intra);
  std::vector<Bundle> chosen(cross.begin(), cross.begin() + static_cast<std::ptrdiff_t>(counts.cross));
  chosen.insert(chosen.end(), intra.begin(), intra.begin() + static_cast<std::ptrdiff_t>(counts.intra));
  std::sort(chosen.begin(), chosen.end(), BySizeThenLex{});

  std::vector<Edge> edges = draw_attractions(spec.num_products, chosen, rng);
  draw_revenues({&edges}, spec.num_products, rng);

  Instance inst;
  inst.num_products = spec.num_products;
  inst.segments.push_back({Hypergraph::create(spec.num_products, std::move(edges)), 1.0});
  inst.constraints = cap_constraint(spec);
  json meta = spec_meta(spec, "single", category);
  meta["cross_bundles"] = counts.cross;
  meta["intra_bundles"] = counts.intra;
  inst.meta = meta.dump();
  return inst;
}

Uncertainty box_budget_set(const std::vector<double>& weights, double low, double high,
                           double budget) {
  const std::size_t k = weights.size();
  Uncertainty u;
  u.num_weights = static_cast<int>(k);
  auto row = [&]() { return std::vector<double>(3 * k, 0.0); };
  auto push = [&](std::vector<double> r, double rhs) {
    u.B.push_back(std::move(r));
    u.d.push_back(rhs);
  };
  for (std::size_t j = 0; j < k; ++j) {
    auto lo = row();
    lo[j] = 1.0;
    push(lo, low * weights[j]);
    auto hi = row();
    hi[j] = -1.0;
    push(hi, -high * weights[j]);
    // w_j - p_j + q_j = weights_j
    auto eq = row();
    eq[j] = 1.0;
    eq[k + j] = -1.0;
    eq[2 * k + j] = 1.0;
    push(eq, weights[j]);
    for (double& v : eq) v = -v;
    push(eq, -weights[j]);
    auto p = row();
    p[k + j] = 1.0;
    push(p, 0.0);
    auto q = row();
    q[2 * k + j] = 1.0;
    push(q, 0.0);
  }
  auto b = row();
  for (std::size_t j = k; j < 3 * k; ++j) b[j] = -1.0;
  push(b, -budget);
  auto s = row();
  for (std::size_t j = 0; j < k; ++j) s[j] = 1.0;
  push(s, 1.0);
  for (double& v : s) v = -v;
  push(s, -1.0);
  return u;
}

Instance generate_mixture(const GenSpec& spec) {
  check_spec(spec);
  if (spec.segments < 2) throw Error(Errc::InvalidArgument, "mixtures need K >= 2");
  SplitMix64 rng(spec.seed);
  const auto category = assign_categories(spec.num_products, spec.categories, rng);
  std::vector<Bundle> pool;
  for (Bundle& b : multi_bundles(spec.num_products, spec.rank)) {
    const bool cross = is_cross(b, category);
    if ((spec.pi == 0.0 && cross) || (spec.pi == 1.0 && !cross)) continue;
    pool.push_back(std::move(b));
  }
  std::vector<double> shared(pool.size());
  for (double& p : shared) p = rng.uniform();
  std::vector<std::vector<Bundle>> members(static_cast<std::size_t>(spec.segments));
  for (auto& m : members) {
    for (std::size_t e = 0; e < pool.size(); ++e) {
      if (0.4 * rng.uniform() + 0.6 * shared[e] <= spec.theta) m.push_back(pool[e]);
    }
  }
  std::vector<std::vector<Edge>> edges;
  for (const auto& m : members) edges.push_back(draw_attractions(spec.num_products, m, rng));
  std::vector<std::vector<Edge>*> ptrs;
  for (auto& e : edges) ptrs.push_back(&e);
  draw_revenues(ptrs, spec.num_products, rng);
  std::vector<double> weights(static_cast<std::size_t>(spec.segments));
  double total = 0.0;
  for (double& w : weights) total += (w = rng.uniform());
  for (double& w : weights) w /= total;

  Instance inst;
  inst.num_products = spec.num_products;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    inst.segments.push_back({Hypergraph::create(spec.num_products, std::move(edges[k])), weights[k]});
  }
  inst.constraints = cap_constraint(spec);
  inst.uncertainty = box_budget_set(weights, spec.box_low, spec.box_high, spec.budget);
  json meta = spec_meta(spec, "mixture", category);
  meta["k"] = spec.segments;
  meta["budget"] = spec.budget;
  inst.meta = meta.dump();
  return inst;
}

namespace {

json edges_json(const Hypergraph& g) {
  json out = json::array();
  for (const Edge& e : g.edges()) {
    std::vector<int> items(e.bundle.items().begin(), e.bundle.items().end());
    out.push_back({{"items", items}, {"v", e.attraction}, {"r", e.revenue}});
  }
  return out;
}

Hypergraph edges_from_json(int n, const json& arr) {
  std::vector<Edge> edges;
  for (const json& e : arr) {
    edges.push_back({Bundle(e.at("items").get<std::vector<int>>()), e.at("v").get<double>(),
                     e.at("r").get<double>()});
  }
  return Hypergraph::create(n, std::move(edges));
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::Le: return "<=";
    case Sense::Ge: return ">=";
    case Sense::Eq: return "=";
  }
  return "<=";
}

Sense sense_from(const std::string& s) {
  if (s == "<=") return Sense::Le;
  if (s == ">=") return Sense::Ge;
  if (s == "=" || s == "==") return Sense::Eq;
  throw Error(Errc::ParseError, "unknown sense '" + s + "'");
}

}  // namespace

std::string to_json(const Instance& inst) {
  json j;
  j["schema"] = 1;
  j["num_products"] = inst.num_products;
  if (inst.is_mixture()) {
    json segs = json::array();
    for (const Segment& s : inst.segments) {
      segs.push_back({{"weight", s.weight}, {"edges", edges_json(s.graph)}});
    }
    j["segments"] = segs;
  } else {
    j["edges"] = edges_json(inst.graph());
  }
  json rows = json::array();
  for (const LinearRow& r : inst.constraints.rows) {
    std::vector<int> items;
    std::vector<double> coeffs;
    for (const Term& t : r.terms) {
      items.push_back(t.var.bundle.front());
      coeffs.push_back(t.coef);
    }
    rows.push_back({{"items", items}, {"coeffs", coeffs}, {"sense", sense_text(r.sense)},
                    {"rhs", r.rhs}});
  }
  j["constraint"] = {{"rows", rows}};
  if (inst.uncertainty) {
    j["uncertainty"] = {{"B", inst.uncertainty->B},
                        {"d", inst.uncertainty->d},
                        {"num_weights", inst.uncertainty->num_weights}};
  }
  j["meta"] = json::parse(inst.meta.empty() ? "{}" : inst.meta);
  return j.dump(1);
}

Instance from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(Errc::ParseError, ex.what());
  }
  try {
    if (!j.is_object() || !j.contains("schema")) {
      throw Error(Errc::ParseError, "missing schema field");
    }
    if (j.at("schema").get<int>() != 1) {
      throw Error(Errc::SchemaVersionMismatch,
                  "schema " + j.at("schema").dump() + ", expected 1");
    }
    Instance inst;
    inst.num_products = j.at("num_products").get<int>();
    if (j.contains("segments")) {
      for (const json& s : j.at("segments")) {
        inst.segments.push_back(
            {edges_from_json(inst.num_products, s.at("edges")), s.at("weight").get<double>()});
      }
      if (inst.segments.empty()) throw Error(Errc::ParseError, "no segments");
    } else {
      inst.segments.push_back({edges_from_json(inst.num_products, j.at("edges")), 1.0});
    }
    if (j.contains("constraint")) {
      for (const json& r : j.at("constraint").at("rows")) {
        const auto items = r.at("items").get<std::vector<int>>();
        const auto coeffs = r.at("coeffs").get<std::vector<double>>();
        if (items.size() != coeffs.size()) {
          throw Error(Errc::ParseError, "items / coeffs length mismatch");
        }
        LinearRow row;
        for (std::size_t k = 0; k < items.size(); ++k) row.add(Var::x(items[k]), coeffs[k]);
        row.sense = sense_from(r.at("sense").get<std::string>());
        row.rhs = r.at("rhs").get<double>();
        inst.constraints.rows.push_back(std::move(row));
      }
    }
    inst.constraints.validate(inst.num_products);
    if (j.contains("uncertainty")) {
      const json& u = j.at("uncertainty");
      Uncertainty set;
      set.B = u.at("B").get<std::vector<std::vector<double>>>();
      set.d = u.at("d").get<std::vector<double>>();
      set.num_weights = u.at("num_weights").get<int>();
      inst.uncertainty = std::move(set);
    }
    inst.meta = j.contains("meta") ? j.at("meta").dump() : "{}";
    return inst;
  } catch (const json::exception& ex) {
    throw Error(Errc::ParseError, ex.what());
  }
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << to_json(instance) << '\n';
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace logitmp
