#include "logitmp/bruteforce.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <thread>

#include "logitmp/error.hpp"
#include "logitmp/solver_backend.hpp"

namespace logitmp {

namespace {

bool lex_less(const Assortment& a, const Assortment& b) {
  return assortment_items(a) < assortment_items(b);
}

struct SegmentSums {
  const Hypergraph* graph;
  double weight;
  double denom = 1.0;
  double numer = 0.0;
};

struct Enumerator {
  std::vector<SegmentSums> segments;
  std::vector<std::vector<double>> row_coef;  // per constraint row, per item
  std::vector<double> row_rhs;
  std::vector<Sense> row_sense;
  int n = 0;

  static double exact_value(const std::vector<SegmentSums>& segs, const Assortment& x) {
    double total = 0.0;
    for (const auto& s : segs) total += s.weight * expected_revenue(*s.graph, x);
    return total;
  }

  bool feasible(const std::vector<double>& lhs) const {
    for (std::size_t r = 0; r < lhs.size(); ++r) {
      const double diff = lhs[r] - row_rhs[r];
      if (row_sense[r] == Sense::Le && diff > 1e-9) return false;
      if (row_sense[r] == Sense::Ge && diff < -1e-9) return false;
      if (row_sense[r] == Sense::Eq && std::abs(diff) > 1e-9) return false;
    }
    return true;
  }

  // Toggles item (0-based) given the mask before the change.
  void toggle(std::vector<SegmentSums>& segs, std::uint64_t mask, int item, bool on,
              std::vector<double>& lhs) const {
    const std::uint64_t after = on ? (mask | (std::uint64_t{1} << item)) : mask;
    for (auto& s : segs) {
      for (std::size_t e : s.graph->incident(item + 1)) {
        if ((s.graph->mask(e) & ~after) != 0) continue;
        const Edge& edge = s.graph->edge(e);
        const double sign = on ? 1.0 : -1.0;
        s.denom += sign * edge.attraction;
        s.numer += sign * edge.attraction * edge.revenue;
      }
    }
    for (std::size_t r = 0; r < lhs.size(); ++r) {
      lhs[r] += (on ? 1.0 : -1.0) * row_coef[r][static_cast<std::size_t>(item)];
    }
  }

  // Enumerates the low `bits` items with the high items fixed by `prefix`.
  EnumerationResult run(int bits, std::uint64_t prefix, bool keep) const {
    std::vector<SegmentSums> segs = segments;
    std::vector<double> lhs(row_rhs.size(), 0.0);
    std::uint64_t mask = 0;
    for (int i = bits; i < n; ++i) {
      if ((prefix >> i) & 1U) {
        toggle(segs, mask, i, true, lhs);
        mask |= std::uint64_t{1} << i;
      }
    }
    EnumerationResult res;
    bool have = false;
    Assortment x(static_cast<std::size_t>(n), 0);
    auto visit = [&]() {
      if (!feasible(lhs)) return;
      for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
      double value = 0.0;
      for (const auto& s : segs) value += s.weight * s.numer / s.denom;
      if (keep) res.table.emplace_back(x, value);
      if (!have || value > res.value - 1e-12) {
        const double exact = exact_value(segs, x);
        if (!have || exact > res.value + 1e-12 ||
            (std::abs(exact - res.value) <= 1e-12 && lex_less(x, res.best))) {
          res.value = exact;
          res.best = x;
          have = true;
        }
      }
    };
    visit();
    const std::uint64_t steps = std::uint64_t{1} << bits;
    for (std::uint64_t g = 1; g < steps; ++g) {
      const int item = std::countr_zero(g);
      const bool on = ((mask >> item) & 1U) == 0;
      toggle(segs, mask, item, on, lhs);
      mask ^= std::uint64_t{1} << item;
      visit();
    }
    return res;
  }
};

void merge_into(EnumerationResult& acc, EnumerationResult&& part, bool& have) {
  if (part.best.empty()) return;
  if (!have || part.value > acc.value + 1e-12 ||
      (std::abs(part.value - acc.value) <= 1e-12 && lex_less(part.best, acc.best))) {
    acc.value = part.value;
    acc.best = std::move(part.best);
    have = true;
  }
  acc.table.insert(acc.table.end(), std::make_move_iterator(part.table.begin()),
                   std::make_move_iterator(part.table.end()));
}

std::uint64_t counting_index(const Assortment& x) {
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k]) m |= std::uint64_t{1} << k;
  }
  return m;
}

}  // namespace

EnumerationResult brute_force_optimum(std::span<const Segment> segments,
                                      const ConstraintSet& constraints,
                                      const EnumerationOptions& options) {
  if (segments.empty()) throw Error(Errc::InvalidArgument, "no segments");
  const int n = segments.front().graph.num_products();
  if (n > options.max_products || n > 30) {
    throw Error(Errc::TooLarge, "N = " + std::to_string(n) + " is too large to enumerate");
  }
  constraints.validate(n);
  Enumerator en;
  en.n = n;
  for (const Segment& s : segments) {
    if (s.graph.num_products() != n) throw Error(Errc::InvalidArgument, "N mismatch");
    en.segments.push_back({&s.graph, s.weight});
  }
  for (const LinearRow& r : constraints.rows) {
    std::vector<double> coef(static_cast<std::size_t>(n), 0.0);
    for (const Term& t : r.terms) coef[static_cast<std::size_t>(t.var.bundle.front() - 1)] += t.coef;
    en.row_coef.push_back(std::move(coef));
    en.row_rhs.push_back(r.rhs);
    en.row_sense.push_back(r.sense);
  }

  int top = 0;
  while ((1 << (top + 1)) <= std::max(1, options.workers) && top + 1 <= n) ++top;
  const int bits = n - top;
  std::vector<EnumerationResult> parts(std::size_t{1} << top);
  if (top == 0) {
    parts[0] = en.run(bits, 0, options.keep_table);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < parts.size(); ++w) {
      threads.emplace_back([&, w] {
        parts[w] = en.run(bits, static_cast<std::uint64_t>(w) << bits, options.keep_table);
      });
    }
    for (auto& t : threads) t.join();
  }
  EnumerationResult out;
  bool have = false;
  for (auto& p : parts) merge_into(out, std::move(p), have);
  if (!have) throw Error(Errc::InfeasibleConstraintSet, "no feasible assortment");
  std::sort(out.table.begin(), out.table.end(), [](const auto& a, const auto& b) {
    return counting_index(a.first) < counting_index(b.first);
  });
  return out;
}

EnumerationResult brute_force_optimum(const Hypergraph& graph,
                                      const ConstraintSet& constraints,
                                      const EnumerationOptions& options) {
  const Segment seg{graph, 1.0};
  return brute_force_optimum(std::span<const Segment>(&seg, 1), constraints, options);
}

namespace {

ModelIR weight_model(const Uncertainty& set) {
  ModelIR m;
  for (std::size_t c = 0; c < set.num_cols(); ++c) {
    m.add_column({"w" + std::to_string(c + 1), -kInf, kInf});
  }
  for (std::size_t j = 0; j < set.B.size(); ++j) {
    Row r;
    for (std::size_t c = 0; c < set.num_cols(); ++c) {
      if (set.B[j][c] != 0.0) r.coeffs.emplace_back(static_cast<int>(c), set.B[j][c]);
    }
    r.lower = set.d[j];
    m.rows.push_back(std::move(r));
  }
  return m;
}

double solve_worst(ModelIR& m, std::span<const double> revenues, Backend& backend) {
  m.objective = Objective{false, {}, 0.0};
  for (std::size_t k = 0; k < revenues.size(); ++k) {
    m.objective.coeffs.emplace_back(static_cast<int>(k), revenues[k]);
  }
  SolveParams params;
  const Solution s = backend.solve(m, params);
  if (s.status == SolveStatus::Infeasible) {
    throw Error(Errc::EmptyUncertainty, "weight set is empty");
  }
  if (s.status != SolveStatus::Optimal) {
    throw Error(Errc::BackendFailure, "inner LP ended " + std::string(status_name(s.status)));
  }
  return s.objective;
}

}  // namespace

double worst_case_value(std::span<const double> segment_revenues, const Uncertainty& set,
                        Backend& backend) {
  ModelIR m = weight_model(set);
  return solve_worst(m, segment_revenues, backend);
}

EnumerationResult robust_brute_force(std::span<const Segment> segments,
                                     const Uncertainty& set,
                                     const ConstraintSet& constraints, Backend& backend,
                                     int max_products) {
  if (segments.empty()) throw Error(Errc::InvalidArgument, "no segments");
  const int n = segments.front().graph.num_products();
  if (n > max_products) throw Error(Errc::TooLarge, "N too large for robust enumeration");
  check_uncertainty(set, backend);
  constraints.validate(n);
  ModelIR m = weight_model(set);
  EnumerationResult out;
  bool have = false;
  std::vector<double> revenue(segments.size());
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    Assortment x(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = (s >> k) & 1U;
    if (!constraints.satisfied_by(x)) continue;
    for (std::size_t k = 0; k < segments.size(); ++k) {
      revenue[k] = expected_revenue(segments[k].graph, x);
    }
    const double value = solve_worst(m, revenue, backend);
    if (!have || value > out.value + 1e-12 ||
        (std::abs(value - out.value) <= 1e-12 && lex_less(x, out.best))) {
      out.value = value;
      out.best = x;
      have = true;
    }
  }
  return out;
}

bool hull_membership(const ChoicePoint& point, const Hypergraph& graph, Backend& backend) {
  if (graph.num_products() > 16) throw Error(Errc::TooLarge, "hull test needs N <= 16");
  if (point.y.size() != graph.num_edges()) {
    throw Error(Errc::InvalidArgument, "point dimension mismatch");
  }
  const auto vertices = enumerate_choice_set(graph, 16);
  ModelIR m;
  m.objective.maximize = false;
  for (std::size_t s = 0; s < vertices.size(); ++s) {
    m.add_column({"t" + std::to_string(s), 0.0, kInf});
  }
  // One row per coordinate (rho, y...) plus the convexity row, each with
  // a positive and a negative residual column.
  auto add_coordinate = [&](const std::string& tag, auto coord, double target) {
    Row r;
    for (std::size_t s = 0; s < vertices.size(); ++s) {
      const double c = coord(vertices[s].point);
      if (c != 0.0) r.coeffs.emplace_back(static_cast<int>(s), c);
    }
    const int plus = m.add_column({"rp_" + tag, 0.0, kInf});
    const int minus = m.add_column({"rm_" + tag, 0.0, kInf});
    r.coeffs.emplace_back(plus, 1.0);
    r.coeffs.emplace_back(minus, -1.0);
    m.objective.coeffs.emplace_back(plus, 1.0);
    m.objective.coeffs.emplace_back(minus, 1.0);
    r.lower = r.upper = target;
    m.rows.push_back(std::move(r));
  };
  add_coordinate("one", [](const ChoicePoint&) { return 1.0; }, 1.0);
  add_coordinate("rho", [](const ChoicePoint& p) { return p.rho; }, point.rho);
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    add_coordinate("y" + std::to_string(e), [e](const ChoicePoint& p) { return p.y[e]; },
                   point.y[e]);
  }
  SolveParams params;
  const Solution s = backend.solve(m, params);
  if (s.status != SolveStatus::Optimal) {
    throw Error(Errc::BackendFailure, "hull LP ended " + std::string(status_name(s.status)));
  }
  return s.objective <= 1e-7;
}

void write_table_csv(const EnumerationResult& result, std::ostream& out) {
  out << "assortment,value\n";
  for (const auto& [x, value] : result.table) {
    const auto items = assortment_items(x);
    for (std::size_t k = 0; k < items.size(); ++k) out << (k ? ";" : "") << items[k];
    if (items.empty()) out << '0';
    out << ',' << format_number(value) << '\n';
  }
}

}  // namespace logitmp
