#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "logitmp/choice_model.hpp"
#include "logitmp/error.hpp"
#include "logitmp/relaxation.hpp"
#include "logitmp/separation.hpp"
#include "oracles.hpp"

using namespace logitmp;

namespace {

FractionalPoint point_of(const Hypergraph& g, const EnumeratedPoint& ep) {
  FractionalPoint p;
  p.rho = ep.point.rho;
  for (std::size_t e = 0; e < g.num_edges(); ++e) p.y[g.edge(e).bundle] = ep.point.y[e];
  for (auto xi : ep.x) p.x.push_back(xi);
  return p;
}

FractionalPoint zero_point(const Hypergraph& g, double rho) {
  FractionalPoint p;
  p.rho = rho;
  for (const Edge& e : g.edges()) p.y[e.bundle] = 0.0;
  p.x.assign(static_cast<std::size_t>(g.num_products()), 0.0);
  return p;
}

std::string le(const LinearRow& r) { return canonical_form(r).str(); }

void check_recorded(const std::vector<Cut>& cuts, const FractionalPoint& p) {
  for (const Cut& c : cuts) {
    const double again = violation(c.row, [&](const Var& v) { return p.value(v); });
    CHECK(std::abs(again - c.violation) <= 1e-10);
  }
}

// Random point of the McCormick box of a rank-2 graph.
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

}  // namespace

TEST_SUITE("separation") {

TEST_CASE("x bounds hold at points of the choice set") {
  std::mt19937 gen(1);
  for (int t = 0; t < 10; ++t) {
    const Hypergraph g = fixtures::random_instance(gen, 5, 3, 5);
    for (const auto& ep : enumerate_choice_set(g)) {
      CHECK(separate_x_bounds(point_of(g, ep), g, 1e-9).empty());
    }
  }
}

TEST_CASE("x upper bound cut on the pair instance") {
  const Hypergraph g = Hypergraph::create(2, {{{1}, 1, 0}, {{2}, 1, 0}, {{1, 2}, 1, 0}});
  FractionalPoint p = zero_point(g, 0.5);
  p.y[Bundle{1, 2}] = 0.5;
  p.x = {1.0, 1.0};
  const auto cuts = separate_x_bounds(p, g, 1e-6);
  bool found = false;
  for (const Cut& c : cuts) {
    if (c.family == CutFamily::XUpper && c.row.terms.size() > 0) {
      bool has_x1 = false;
      for (const Term& t : c.row.terms) has_x1 = has_x1 || t.var == Var::x(1);
      if (has_x1) {
        found = true;
        CHECK(c.violation == doctest::Approx(0.5));
      }
    }
  }
  CHECK(found);
  check_recorded(cuts, p);
  CHECK(separate_x_bounds(p, g, 10.0).empty());
}

TEST_CASE("odd-cycle inequality of the five-cycle") {
  const OddCycle c{{1, 2, 3, 4, 5}, {true, true, true, false, false}};
  const LinearRow expected{{{Var::y(Bundle{4, 5}), 1.0},
                            {Var::y(Bundle{1, 5}), 1.0},
                            {Var::y(Bundle{1, 2}), -1.0},
                            {Var::y(Bundle{2, 3}), -1.0},
                            {Var::y(Bundle{3, 4}), -1.0},
                            {Var::y(Bundle{5}), -1.0},
                            {Var::y(Bundle{2}), 1.0},
                            {Var::y(Bundle{3}), 1.0},
                            {Var::rho(), -1.0}},
                           Sense::Le,
                           0.0};
  CHECK(le(odd_cycle_inequality(c)) == le(expected));
  CHECK_THROWS_AS(odd_cycle_inequality({{1, 2, 3}, {true, true, false}}), Error);
}

TEST_CASE("odd cycles at choice-set points and on a triangle") {
  const Hypergraph cyc = fixtures::five_cycle();
  for (const auto& ep : enumerate_choice_set(cyc)) {
    CHECK(separate_odd_cycle(point_of(cyc, ep), cyc, 1e-9).empty());
  }
  auto edges = fixtures::singletons(3);
  for (auto b : {Bundle{1, 2}, Bundle{2, 3}, Bundle{1, 3}}) edges.push_back({b, 1.0, 0.0});
  const Hypergraph tri = Hypergraph::create(3, edges);
  FractionalPoint p = zero_point(tri, 0.4);
  for (int i = 1; i <= 3; ++i) p.y[Bundle{i}] = 0.2;
  const auto cuts = separate_odd_cycle(p, tri, 1e-6);
  REQUIRE_FALSE(cuts.empty());
  check_recorded(cuts, p);
  double best = 0.0;
  for (const Cut& c : cuts) best = std::max(best, c.violation);
  const double ref = oracle::max_odd_cycle_violation(
      3, p.rho, {0, 0.2, 0.2, 0.2}, {{1, 2}, {2, 3}, {1, 3}}, [](int, int) { return 0.0; }, 7);
  CHECK(best == doctest::Approx(ref).epsilon(1e-12));

  FractionalPoint neg = p;
  neg.y[Bundle{1, 2}] = 0.3;  // exceeds min(y_1, y_2) by a lot
  CHECK_THROWS_AS(separate_odd_cycle(neg, tri, 1e-6), Error);
}

TEST_CASE("odd-cycle oracle agrees with enumeration") {
  std::mt19937 gen(17);
  for (int t = 0; t < 12; ++t) {
    const int n = 4 + t % 4;
    const Hypergraph g = fixtures::random_instance(gen, n, 2, n + 2);
    const FractionalPoint p = mccormick_point(gen, g);
    std::vector<double> yn{0.0};
    for (int i = 1; i <= n; ++i) yn.push_back(p.y.at(Bundle{i}));
    std::vector<std::pair<int, int>> ge;
    for (const Edge& e : g.edges()) {
      if (e.bundle.size() == 2) ge.emplace_back(e.bundle.front(), e.bundle.back());
    }
    const double ref = oracle::max_odd_cycle_violation(
        n, p.rho, yn, ge, [&](int u, int v) { return p.y.at(Bundle{u, v}); }, n + 1);
    const auto cuts = separate_odd_cycle(p, g, 1e-6);
    CHECK((ref > 1e-6) == !cuts.empty());
    check_recorded(cuts, p);
  }
}

TEST_CASE("running intersection structures") {
  const Hypergraph g = fixtures::nested_six();
  const auto s = build_ri_structures(g, 3);
  const RIStructure* center = nullptr;
  for (const auto& x : s) {
    CHECK(x.center.size() >= 2);
    if (x.center == Bundle{1, 2, 3, 4, 5, 6}) center = &x;
  }
  REQUIRE(center);
  bool found = false;
  for (const auto& o : center->orderings) {
    CHECK(is_ri_ordering(o));
    for (std::size_t a = 0; a < o.order.size(); ++a) {
      for (std::size_t b = 0; b < o.order.size(); ++b) {
        if (a != b) CHECK_FALSE(o.order[a].is_subset_of(o.order[b]));
      }
    }
    if (o.order == std::vector<Bundle>{{1, 2}, {2, 3}, {3, 4, 5}}) {
      found = true;
      CHECK(o.neighbors == std::vector<Bundle>{{}, {2}, {3}});
    }
  }
  CHECK(found);

  for (const auto& x : build_ri_structures(g, 1)) {
    for (const auto& o : x.orderings) CHECK(o.order.size() == 1);
  }

  auto star = fixtures::singletons(7);
  for (auto b : {Bundle{1, 2, 3, 4, 5, 6}, Bundle{1, 7}, Bundle{2, 7}, Bundle{3, 7}}) {
    star.push_back({b, 1.0, 0.0});
  }
  const Hypergraph st = Hypergraph::create(7, star);
  for (const auto& x : build_ri_structures(st, 3)) {
    if (x.center != Bundle{1, 2, 3, 4, 5, 6}) continue;
    // six singleton intersections: every subset of size <= 3 is an ordering
    CHECK(x.orderings.size() == 6 + 15 + 20);
  }
  CHECK_THROWS_AS(build_ri_structures(g, 0), Error);
}

TEST_CASE("running intersection inequality and separation") {
  const Hypergraph g = fixtures::nested_six();
  const Bundle e0{1, 2, 3, 4, 5, 6};
  const std::vector<Bundle> chosen{{1, 2}, {2, 3}, {3, 4, 5}};
  const std::vector<Bundle> nbrs{{}, {2}, {3}};
  const std::vector<int> mu{0, 2, 3};
  const LinearRow row = running_intersection_inequality(e0, chosen, chosen, nbrs, mu);
  const LinearRow expected{{{Var::y(Bundle{1, 2}), 1.0},
                            {Var::y(Bundle{2, 3}), 1.0},
                            {Var::y(Bundle{3, 4, 5}), 1.0},
                            {Var::y(Bundle{6}), 1.0},
                            {Var::rho(), -1.0},
                            {Var::y(e0), -1.0},
                            {Var::y(Bundle{2}), -1.0},
                            {Var::y(Bundle{3}), -1.0}},
                           Sense::Le,
                           0.0};
  CHECK(le(row) == le(expected));

  const auto structures = build_ri_structures(g, 3);
  for (const auto& ep : enumerate_choice_set(g)) {
    CHECK(separate_running_intersection(point_of(g, ep), structures, 1e-9).empty());
  }

  FractionalPoint p = zero_point(g, 0.3);
  for (const auto& b : chosen) p.y[b] = 0.3;
  const auto cuts = separate_running_intersection(p, structures, 1e-6);
  check_recorded(cuts, p);
  bool found = false;
  for (const Cut& c : cuts) {
    if (le(c.row) == le(expected)) {
      found = true;
      CHECK(c.violation == doctest::Approx(0.6).epsilon(1e-12));
    }
  }
  CHECK(found);
}

}  // TEST_SUITE
