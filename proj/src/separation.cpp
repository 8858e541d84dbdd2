#include "logitmp/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "logitmp/error.hpp"

namespace logitmp {

namespace {
constexpr double kInfDist = std::numeric_limits<double>::infinity();
}  // namespace

double FractionalPoint::y_of(const Bundle& b) const {
  auto it = y.find(b);
  if (it == y.end()) throw Error(Errc::UnknownBundle, "point has no y" + b.str());
  return it->second;
}

double FractionalPoint::value(const Var& var) const {
  switch (var.kind) {
    case VarKind::Rho: return rho;
    case VarKind::Y: return y_of(var.bundle);
    case VarKind::X: return x.at(static_cast<std::size_t>(var.bundle.front() - 1));
    case VarKind::Z: break;
  }
  throw Error(Errc::InvalidArgument, "cuts are not over z");
}

std::string_view family_name(CutFamily family) {
  switch (family) {
    case CutFamily::XLower: return "xlower";
    case CutFamily::XUpper: return "xupper";
    case CutFamily::OddCycle: return "odd";
    case CutFamily::RunningIntersection: return "ric";
  }
  return "?";
}

LinearRow canonical_form(const LinearRow& row) {
  LinearRow out = row.normalized();
  if (out.sense == Sense::Ge) {
    for (Term& t : out.terms) t.coef = -t.coef;
    out.rhs = 0.0 - out.rhs;
    out.sense = Sense::Le;
  }
  return out;
}

namespace {

Cut make_cut(LinearRow row, CutFamily family, const FractionalPoint& p) {
  row = row.normalized();
  const double viol = violation(row, [&](const Var& v) { return p.value(v); });
  return Cut{std::move(row), family, viol};
}

}  // namespace

std::vector<Cut> separate_x_bounds(const FractionalPoint& p, const Hypergraph& graph,
                                   double eps) {
  std::vector<Cut> cuts;
  for (int i = 1; i <= graph.num_products(); ++i) {
    const Bundle self = Bundle::singleton(i);
    const double yi = p.y_of(self);
    const double xi = p.x.at(static_cast<std::size_t>(i - 1));
    LinearRow core;
    core.add(Var::x(i), 1.0).add(Var::y(self), -1.0);
    double base = yi;
    for (const Edge& e : graph.edges()) {
      if (!e.bundle.contains(i)) continue;
      base += e.attraction * p.y_of(e.bundle);
      core.add(Var::y(e.bundle), -e.attraction);
    }
    double lower = base, upper = base;
    LinearRow lo = core, up = core;
    lo.sense = Sense::Ge;
    up.sense = Sense::Le;
    for (const Edge& e : graph.edges()) {
      if (e.bundle.contains(i)) continue;
      const double v = e.attraction;
      const double ye = p.y_of(e.bundle);
      if (yi + ye - p.rho > 0.0) {
        lower += v * (yi + ye - p.rho);
        lo.add(Var::y(self), -v).add(Var::y(e.bundle), -v).add(Var::rho(), v);
      }
      if (ye < yi) {
        upper += v * ye;
        up.add(Var::y(e.bundle), -v);
      } else {
        upper += v * yi;
        up.add(Var::y(self), -v);
      }
    }
    if (lower - xi > eps) cuts.push_back(make_cut(std::move(lo), CutFamily::XLower, p));
    if (xi - upper > eps) cuts.push_back(make_cut(std::move(up), CutFamily::XUpper, p));
  }
  return cuts;
}

namespace {

// Adds sign * c_uv.
void add_edge_term(LinearRow& row, int u, int v, double sign) {
  if (u == 0) std::swap(u, v);
  row.add(Var::y(Bundle::singleton(u)), sign);
  if (v == 0) return;
  row.add(Var::y(Bundle::singleton(v)), sign);
  row.add(Var::y(Bundle{u, v}), -2.0 * sign);
}

}  // namespace

LinearRow odd_cycle_inequality(const OddCycle& cycle) {
  const std::size_t k = cycle.nodes.size();
  if (k < 2 || cycle.cross.size() != k) {
    throw Error(Errc::InvalidArgument, "malformed cycle");
  }
  const auto odd = std::count(cycle.cross.begin(), cycle.cross.end(), true);
  if (odd % 2 == 0) throw Error(Errc::InvalidArgument, "D must have odd size");
  LinearRow row;
  row.sense = Sense::Ge;
  for (std::size_t t = 0; t < k; ++t) {
    const int u = cycle.nodes[t];
    const int v = cycle.nodes[(t + 1) % k];
    if (cycle.cross[t]) {
      row.add(Var::rho(), 0.5);
      add_edge_term(row, u, v, -0.5);
    } else {
      add_edge_term(row, u, v, 0.5);
    }
  }
  row.add(Var::rho(), -0.5);
  return row.normalized();
}

namespace {

struct Arc {
  int to;
  double length;
};

// Splits a closed walk at repeated nodes, keeping the part with odd D, until
// every node appears once.
OddCycle simplify_walk(OddCycle walk) {
  for (;;) {
    const std::size_t k = walk.nodes.size();
    std::size_t p = k, q = k;
    for (std::size_t a = 0; a < k && p == k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        if (walk.nodes[a] == walk.nodes[b]) {
          p = a;
          q = b;
          break;
        }
      }
    }
    if (p == k) return walk;
    OddCycle inner, outer;
    for (std::size_t t = p; t < q; ++t) {
      inner.nodes.push_back(walk.nodes[t]);
      inner.cross.push_back(walk.cross[t]);
    }
    for (std::size_t t = q; t < k; ++t) {
      outer.nodes.push_back(walk.nodes[t]);
      outer.cross.push_back(walk.cross[t]);
    }
    for (std::size_t t = 0; t < p; ++t) {
      outer.nodes.push_back(walk.nodes[t]);
      outer.cross.push_back(walk.cross[t]);
    }
    const auto odd_inner = std::count(inner.cross.begin(), inner.cross.end(), true);
    walk = (odd_inner % 2 == 1) ? std::move(inner) : std::move(outer);
  }
}

}  // namespace

std::vector<Cut> separate_odd_cycle(const FractionalPoint& p, const Hypergraph& graph,
                                    double eps) {
  const int n = graph.num_products();
  // Node v (0 = o) has copies 2v (side 0) and 2v + 1 (side 1).
  std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(2 * (n + 1)));
  std::vector<double> yv(static_cast<std::size_t>(n + 1), 0.0);
  for (int i = 1; i <= n; ++i) yv[static_cast<std::size_t>(i)] = p.y_of(Bundle::singleton(i));
  const double rho = p.rho;
  if (!(rho > 0.0)) return {};

  auto clamp = [](double w) {
    if (w < -1e-9) throw Error(Errc::NegativeWeight, "edge length " + format_number(w));
    return std::max(w, 0.0);
  };
  auto link = [&](int u, int v, double same, double cross) {
    same = clamp(same);
    cross = clamp(cross);
    for (int s = 0; s < 2; ++s) {
      adj[static_cast<std::size_t>(2 * u + s)].push_back({2 * v + s, same});
      adj[static_cast<std::size_t>(2 * v + s)].push_back({2 * u + s, same});
      adj[static_cast<std::size_t>(2 * u + s)].push_back({2 * v + 1 - s, cross});
      adj[static_cast<std::size_t>(2 * v + 1 - s)].push_back({2 * u + s, cross});
    }
  };
  for (int i = 1; i <= n; ++i) {
    const double y = yv[static_cast<std::size_t>(i)];
    link(i, 0, y, rho - y);
  }
  for (const Edge& e : graph.edges()) {
    if (e.bundle.size() != 2) continue;
    const int u = e.bundle.front(), v = e.bundle.back();
    const double yu = yv[static_cast<std::size_t>(u)], yw = yv[static_cast<std::size_t>(v)];
    const double yuv = p.y_of(e.bundle);
    link(u, v, yu + yw - 2.0 * yuv, rho - yu - yw + 2.0 * yuv);
  }

  std::vector<Cut> cuts;
  std::set<std::string> seen;
  const std::size_t nn = adj.size();
  for (int start = 0; start <= n; ++start) {
    std::vector<double> dist(nn, kInfDist);
    std::vector<int> prev(nn, -1);
    using QItem = std::pair<double, int>;
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> queue;
    dist[static_cast<std::size_t>(2 * start)] = 0.0;
    queue.push({0.0, 2 * start});
    while (!queue.empty()) {
      auto [d, u] = queue.top();
      queue.pop();
      if (d > dist[static_cast<std::size_t>(u)]) continue;
      for (const Arc& a : adj[static_cast<std::size_t>(u)]) {
        const double nd = d + a.length;
        if (nd < dist[static_cast<std::size_t>(a.to)]) {
          dist[static_cast<std::size_t>(a.to)] = nd;
          prev[static_cast<std::size_t>(a.to)] = u;
          queue.push({nd, a.to});
        }
      }
    }
    const int target = 2 * start + 1;
    if (!(dist[static_cast<std::size_t>(target)] < rho * (1.0 - eps))) continue;

    std::vector<int> path;
    for (int u = target; u != -1; u = prev[static_cast<std::size_t>(u)]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    OddCycle walk;
    for (std::size_t t = 0; t + 1 < path.size(); ++t) {
      walk.nodes.push_back(path[t] / 2);
      walk.cross.push_back((path[t] % 2) != (path[t + 1] % 2));
    }
    OddCycle cycle = simplify_walk(std::move(walk));
    if (cycle.nodes.size() < 3) continue;
    Cut cut = make_cut(odd_cycle_inequality(cycle), CutFamily::OddCycle, p);
    if (cut.violation <= eps) continue;
    if (seen.insert(canonical_form(cut.row).str()).second) cuts.push_back(std::move(cut));
  }
  return cuts;
}

std::vector<RIStructure> build_ri_structures(const Hypergraph& graph, int m_bar) {
  if (m_bar < 1) throw Error(Errc::InvalidArgument, "m_bar must be at least 1");
  std::vector<RIStructure> out;
  for (const Edge& center : graph.edges()) {
    if (center.bundle.size() < 2) continue;
    RIStructure s;
    s.center = center.bundle;
    for (const NeighborIntersection& n : neighbor_intersections(graph, center.bundle)) {
      s.neighbors[n.intersection].push_back(n.neighbor);
    }
    std::vector<Bundle> parts;
    for (const auto& [part, nbrs] : s.neighbors) parts.push_back(part);
    std::sort(parts.begin(), parts.end(), BySizeThenLex{});
    const int m = static_cast<int>(parts.size());
    const int cap = std::min(m_bar, m);
    std::vector<int> pick;
    // Subsets in order of size, then lexicographic index order.
    for (int size = 1; size <= cap; ++size) {
      pick.resize(static_cast<std::size_t>(size));
      for (int k = 0; k < size; ++k) pick[static_cast<std::size_t>(k)] = k;
      for (;;) {
        std::vector<Bundle> family;
        for (int k : pick) family.push_back(parts[static_cast<std::size_t>(k)]);
        bool antichain = true;
        for (std::size_t a = 0; a < family.size() && antichain; ++a) {
          for (std::size_t b = 0; b < family.size() && antichain; ++b) {
            if (a != b && family[a].is_subset_of(family[b])) antichain = false;
          }
        }
        if (antichain) {
          if (auto ord = find_ri_ordering(family)) s.orderings.push_back(std::move(*ord));
        }
        int j = size - 1;
        while (j >= 0 && pick[static_cast<std::size_t>(j)] == m - size + j) --j;
        if (j < 0) break;
        ++pick[static_cast<std::size_t>(j)];
        for (int k = j + 1; k < size; ++k) {
          pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
        }
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

LinearRow running_intersection_inequality(const Bundle& center,
                                          std::span<const Bundle> chosen,
                                          std::span<const Bundle> intersections,
                                          std::span<const Bundle> neighbor_sets,
                                          std::span<const int> mu) {
  LinearRow row;
  row.sense = Sense::Le;
  Bundle covered;
  int omega = 0;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    row.add(Var::y(chosen[k]), 1.0);
    covered = covered.unite(intersections[k]);
    if (neighbor_sets[k].empty()) {
      ++omega;
    } else {
      row.add(Var::y(Bundle::singleton(mu[k])), -1.0);
    }
  }
  const Bundle rest = center.minus(covered);
  omega += static_cast<int>(rest.size());
  for (int v : rest.items()) row.add(Var::y(Bundle::singleton(v)), 1.0);
  row.add(Var::y(center), -1.0);
  row.add(Var::rho(), -static_cast<double>(omega - 1));
  return row.normalized();
}

std::vector<Cut> separate_running_intersection(const FractionalPoint& p,
                                               std::span<const RIStructure> structures,
                                               double eps) {
  std::vector<Cut> cuts;
  std::set<std::string> seen;
  for (const RIStructure& s : structures) {
    for (const RIOrdering& ord : s.orderings) {
      const std::size_t m = ord.order.size();
      std::vector<Bundle> chosen(m);
      std::vector<int> mu(m, 0);
      for (std::size_t k = 0; k < m; ++k) {
        const std::vector<Bundle>& cands = s.neighbors.at(ord.order[k]);
        double best = -kInfDist;
        for (const Bundle& c : cands) {
          const double v = p.y_of(c);
          if (v > best) {
            best = v;
            chosen[k] = c;
          }
        }
        double low = kInfDist;
        for (int item : ord.neighbors[k].items()) {
          const double v = p.y_of(Bundle::singleton(item));
          if (v < low) {
            low = v;
            mu[k] = item;
          }
        }
      }
      LinearRow row = running_intersection_inequality(s.center, chosen, ord.order,
                                                      ord.neighbors, mu);
      Cut cut = make_cut(std::move(row), CutFamily::RunningIntersection, p);
      if (cut.violation <= eps) continue;
      if (seen.insert(cut.row.str()).second) cuts.push_back(std::move(cut));
    }
  }
  return cuts;
}

}  // namespace logitmp
