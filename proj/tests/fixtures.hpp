#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "logitmp/estimation.hpp"
#include "logitmp/hypergraph.hpp"

namespace fixtures {

using logitmp::Bundle;
using logitmp::Edge;
using logitmp::Hypergraph;

inline std::vector<Edge> singletons(int n, double v = 1.0, double r = 0.0) {
  std::vector<Edge> out;
  for (int i = 1; i <= n; ++i) out.push_back({Bundle::singleton(i), v, r});
  return out;
}

// Two products and their pair, v = 1, revenues (2, 3, 5).
inline Hypergraph two_item_pair() {
  return Hypergraph::create(2, {{{1}, 1.0, 2.0}, {{2}, 1.0, 3.0}, {{1, 2}, 1.0, 5.0}});
}

// The 5-cycle 1-2-3-4-5-1 with unit attractions.
inline Hypergraph five_cycle(double v = 1.0) {
  auto edges = singletons(5, v, 1.0);
  for (auto b : {Bundle{1, 2}, Bundle{2, 3}, Bundle{3, 4}, Bundle{4, 5}, Bundle{1, 5}}) {
    edges.push_back({b, v, 2.0});
  }
  return Hypergraph::create(5, std::move(edges));
}

// Center {1..6} with neighbors {1,2}, {2,3}, {3,4,5}.
inline Hypergraph nested_six() {
  auto edges = singletons(6, 1.0, 1.0);
  edges.push_back({{1, 2}, 1.0, 2.0});
  edges.push_back({{2, 3}, 1.0, 2.0});
  edges.push_back({{3, 4, 5}, 1.0, 3.0});
  edges.push_back({{1, 2, 3, 4, 5, 6}, 1.0, 6.0});
  return Hypergraph::create(6, std::move(edges));
}

// Random instance with n products, m distinct multi-item bundles of size
// 2..d, v = exp(U(-1.5, 1)) and revenues U(1, 5).
inline Hypergraph random_instance(std::mt19937& gen, int n, int d, int m) {
  std::uniform_real_distribution<double> u(-1.5, 1.0), r(1.0, 5.0);
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) edges.push_back({Bundle{i}, std::exp(u(gen)), r(gen)});
  std::set<Bundle> seen;
  int guard = 0;
  while (static_cast<int>(seen.size()) < m && ++guard < 10000) {
    const int size = 2 + static_cast<int>(gen() % static_cast<unsigned>(d - 1));
    std::vector<int> pool;
    for (int i = 1; i <= n; ++i) pool.push_back(i);
    std::shuffle(pool.begin(), pool.end(), gen);
    pool.resize(static_cast<std::size_t>(std::min(size, n)));
    Bundle b(pool);
    if (b.size() >= 2 && seen.insert(b).second) edges.push_back({b, std::exp(u(gen)), r(gen)});
  }
  return Hypergraph::create(n, std::move(edges));
}

inline std::vector<logitmp::Product> products8() {
  std::vector<logitmp::Product> p;
  const double prices[] = {1.0, 1.5, 2.0, 2.5, 1.2, 1.8, 2.2, 3.0};
  for (int i = 0; i < 8; ++i) p.push_back({i % 3, prices[i]});
  return p;
}

// Truth with category effects, price sensitivity and pair interactions.
inline Hypergraph truth8(const std::vector<logitmp::Product>& p) {
  const double eta[] = {0.4, -0.2, 0.1};
  const double eta_r = -0.5;
  auto alpha = [&](int i) {
    const logitmp::Product& q = p[static_cast<std::size_t>(i - 1)];
    return eta[q.category] + eta_r * q.price;
  };
  std::vector<Hypergraph::UtilityEdge> edges;
  for (int i = 1; i <= 8; ++i) edges.push_back({Bundle{i}, alpha(i), p[static_cast<std::size_t>(i - 1)].price});
  const std::vector<std::pair<Bundle, double>> multi{
      {{1, 2}, 1.6}, {{3, 4}, 1.8}, {{5, 6}, 1.5}, {{2, 7}, 1.7}, {{1, 8}, 1.4}, {{4, 6}, 1.6}};
  for (const auto& [b, beta] : multi) {
    double u = beta, r = 0.0;
    for (int i : b.items()) {
      u += alpha(i);
      r += p[static_cast<std::size_t>(i - 1)].price;
    }
    edges.push_back({b, u, r});
  }
  return Hypergraph::from_utilities(8, edges);
}

}  // namespace fixtures
