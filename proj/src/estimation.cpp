#include "logitmp/estimation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "logitmp/choice_model.hpp"
#include "logitmp/error.hpp"
#include "logitmp/linear_row.hpp"
#include "logitmp/rng.hpp"

namespace logitmp {

double Period::total() const {
  double n = outside;
  for (const auto& [b, c] : counts) n += c;
  return n;
}

int TransactionData::num_categories() const {
  int c = 0;
  for (const Product& p : products) c = std::max(c, p.category + 1);
  return c;
}

void TransactionData::validate() const {
  if (static_cast<int>(products.size()) != num_products) {
    throw Error(Errc::InvalidArgument, "one product record per item is required");
  }
  for (const Period& p : periods) {
    if (p.outside < 0) throw Error(Errc::InvalidArgument, "negative outside count");
    if (!p.assortment.empty() &&
        (p.assortment.front() < 1 || p.assortment.back() > num_products)) {
      throw Error(Errc::ItemOutOfRange, "assortment item out of range");
    }
    for (const auto& [b, c] : p.counts) {
      if (c < 0) throw Error(Errc::InvalidArgument, "negative count");
      if (!b.is_subset_of(p.assortment)) {
        throw Error(Errc::InvalidArgument, "bundle " + b.str() + " sold but not offered");
      }
    }
  }
}

namespace {

void for_each_bundle(int n, int size, const std::function<void(const Bundle&)>& f) {
  std::vector<int> pick(static_cast<std::size_t>(size));
  for (int k = 0; k < size; ++k) pick[static_cast<std::size_t>(k)] = k + 1;
  if (size > n) return;
  for (;;) {
    f(Bundle(pick));
    int j = size - 1;
    while (j >= 0 && pick[static_cast<std::size_t>(j)] == n - size + j + 1) --j;
    if (j < 0) return;
    ++pick[static_cast<std::size_t>(j)];
    for (int k = j + 1; k < size; ++k) {
      pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
    }
  }
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long double r = 1.0L;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(std::llround(r));
}

}  // namespace

Hypergraph build_candidate_hypergraph(const TransactionData& data, int d, double theta) {
  if (data.periods.empty()) throw Error(Errc::NoTransactions, "no periods");
  if (d < 1) throw Error(Errc::InvalidArgument, "d must be >= 1");
  if (!(theta > 0.0 && theta <= 1.0)) throw Error(Errc::InvalidArgument, "theta must lie in (0, 1]");
  const int n = data.num_products;
  double all = 0.0;
  std::map<Bundle, double> totals;
  for (const Period& p : data.periods) {
    all += p.total();
    for (const auto& [b, c] : p.counts) {
      if (b.size() >= 2 && static_cast<int>(b.size()) <= d) totals[b] += c;
    }
  }
  if (all <= 0.0) throw Error(Errc::NoTransactions, "all counts are zero");

  std::uint64_t pool = 0;
  for (int k = 2; k <= std::min(d, n); ++k) pool += binom(n, k);
  const auto quota = static_cast<std::uint64_t>(std::ceil(theta * static_cast<double>(pool) - 1e-9));

  std::vector<std::pair<Bundle, double>> ranked;
  for (const auto& [b, c] : totals) {
    if (c > 0) ranked.emplace_back(b, c);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return BySizeThenLex{}(a.first, b.first);
  });
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) {
    edges.push_back({Bundle::singleton(i), 1.0, data.products[static_cast<std::size_t>(i - 1)].price});
  }
  auto push = [&](const Bundle& b) {
    double r = 0.0;
    for (int i : b.items()) r += data.products[static_cast<std::size_t>(i - 1)].price;
    edges.push_back({b, 1.0, r});
  };
  std::set<Bundle> taken;
  for (const auto& [b, c] : ranked) {
    if (taken.size() >= quota) break;
    taken.insert(b);
    push(b);
  }
  if (taken.size() < quota) {
    if (pool > 5'000'000) throw Error(Errc::TooLarge, "too many unobserved candidate bundles");
    for (int k = 2; k <= std::min(d, n) && taken.size() < quota; ++k) {
      for_each_bundle(n, k, [&](const Bundle& b) {
        if (taken.size() < quota && !taken.contains(b)) {
          taken.insert(b);
          push(b);
        }
      });
    }
  }
  return Hypergraph::create(n, std::move(edges));
}

UtilityDesign utility_design(const TransactionData& data, const Hypergraph& structure,
                             const FitSpec& spec) {
  UtilityDesign out;
  const int n = data.num_products;
  std::vector<std::vector<std::pair<int, double>>> alpha(static_cast<std::size_t>(n));
  if (spec.per_item_alpha) {
    for (int i = 1; i <= n; ++i) {
      alpha[static_cast<std::size_t>(i - 1)] = {{i - 1, 1.0}};
      out.names.push_back("alpha_" + std::to_string(i));
    }
  } else {
    const int cats = data.num_categories();
    for (int c = 0; c < cats; ++c) out.names.push_back("eta_cat" + std::to_string(c + 1));
    out.names.push_back("eta_price");
    for (int i = 1; i <= n; ++i) {
      const Product& p = data.products[static_cast<std::size_t>(i - 1)];
      alpha[static_cast<std::size_t>(i - 1)] = {{p.category, 1.0}, {cats, p.price}};
    }
  }
  std::map<std::pair<int, int>, int> beta;
  for (const Edge& e : structure.edges()) {
    const auto items = e.bundle.items();
    for (std::size_t s = 0; s < items.size(); ++s) {
      for (std::size_t t = s + 1; t < items.size(); ++t) beta.emplace(std::pair{items[s], items[t]}, 0);
    }
  }
  for (auto& [pair, idx] : beta) {
    idx = static_cast<int>(out.names.size());
    out.names.push_back("beta_" + std::to_string(pair.first) + "_" + std::to_string(pair.second));
  }
  for (const Edge& e : structure.edges()) {
    std::map<int, double> row;
    const auto items = e.bundle.items();
    for (std::size_t s = 0; s < items.size(); ++s) {
      for (const auto& [col, coef] : alpha[static_cast<std::size_t>(items[s] - 1)]) row[col] += coef;
      for (std::size_t t = s + 1; t < items.size(); ++t) row[beta.at({items[s], items[t]})] += 1.0;
    }
    out.rows.emplace_back(row.begin(), row.end());
  }
  return out;
}

namespace {

struct PreparedPeriod {
  std::vector<std::size_t> edges;  // offered structure edges
  std::vector<double> counts;      // sales per offered edge
  double outside = 0.0;            // no-purchase plus unmodeled sales
  double total = 0.0;
};

std::vector<PreparedPeriod> prepare(const TransactionData& data, const Hypergraph& g,
                                    const std::vector<std::size_t>& periods) {
  std::vector<PreparedPeriod> out;
  for (std::size_t t : periods) {
    const Period& p = data.periods[t];
    PreparedPeriod pp;
    pp.outside = p.outside;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      if (g.edge(e).bundle.is_subset_of(p.assortment)) {
        pp.edges.push_back(e);
        pp.counts.push_back(0.0);
      }
    }
    for (const auto& [b, c] : p.counts) {
      auto idx = g.find(b);
      auto pos = idx ? std::find(pp.edges.begin(), pp.edges.end(), *idx) : pp.edges.end();
      if (pos == pp.edges.end()) {
        pp.outside += c;
      } else {
        pp.counts[static_cast<std::size_t>(pos - pp.edges.begin())] += c;
      }
    }
    pp.total = pp.outside;
    for (double c : pp.counts) pp.total += c;
    out.push_back(std::move(pp));
  }
  return out;
}

std::vector<double> utilities_of(const UtilityDesign& design, const std::vector<double>& params) {
  std::vector<double> u(design.rows.size(), 0.0);
  for (std::size_t e = 0; e < design.rows.size(); ++e) {
    for (const auto& [col, coef] : design.rows[e]) u[e] += coef * params[static_cast<std::size_t>(col)];
  }
  return u;
}

// Log-likelihood with optional gradient and Hessian (negative semidefinite).
double evaluate(const std::vector<PreparedPeriod>& periods, const UtilityDesign& design,
                const std::vector<double>& params, Eigen::VectorXd* grad,
                Eigen::MatrixXd* hess) {
  const auto k = static_cast<Eigen::Index>(params.size());
  const std::vector<double> u = utilities_of(design, params);
  if (grad) grad->setZero(k);
  if (hess) hess->setZero(k, k);
  Eigen::VectorXd mean(k);
  double ll = 0.0;
  for (const PreparedPeriod& p : periods) {
    if (p.total <= 0.0) continue;
    double umax = 0.0;
    for (std::size_t e : p.edges) umax = std::max(umax, u[e]);
    double denom = std::exp(-umax);
    for (std::size_t e : p.edges) denom += std::exp(u[e] - umax);
    const double log_rho = -umax - std::log(denom);
    ll += p.total * log_rho;
    for (std::size_t j = 0; j < p.edges.size(); ++j) ll += p.counts[j] * u[p.edges[j]];
    if (!grad && !hess) continue;
    mean.setZero();
    for (std::size_t j = 0; j < p.edges.size(); ++j) {
      const std::size_t e = p.edges[j];
      const double prob = std::exp(u[e] - umax) / denom;
      for (const auto& [col, coef] : design.rows[e]) {
        mean[col] += prob * coef;
        if (grad) (*grad)[col] += p.counts[j] * coef;
      }
      if (hess) {
        for (const auto& [a, ca] : design.rows[e]) {
          for (const auto& [b, cb] : design.rows[e]) (*hess)(a, b) -= p.total * prob * ca * cb;
        }
      }
    }
    if (grad) *grad -= p.total * mean;
    if (hess) *hess += p.total * mean * mean.transpose();
  }
  return ll;
}

std::vector<std::size_t> all_periods(const TransactionData& data) {
  std::vector<std::size_t> idx(data.periods.size());
  for (std::size_t t = 0; t < idx.size(); ++t) idx[t] = t;
  return idx;
}

FitResult fit_prepared(const TransactionData& data, const Hypergraph& structure,
                       const std::vector<PreparedPeriod>& periods, const FitSpec& spec) {
  const UtilityDesign design = utility_design(data, structure, spec);
  const auto k = static_cast<Eigen::Index>(design.names.size());
  std::vector<double> params(design.names.size(), 0.0);
  Eigen::VectorXd grad(k);
  Eigen::MatrixXd hess(k, k);
  FitResult out;
  double ll = evaluate(periods, design, params, &grad, &hess);
  int iter = 0;
  bool converged = false;
  double last_step = 0.0, last_rise = 0.0;
  for (; iter < spec.max_iters; ++iter) {
    Eigen::MatrixXd neg = -hess;
    const double diag = neg.diagonal().cwiseAbs().maxCoeff();
    neg.diagonal().array() += diag > 0.0 ? 1e-14 * diag : 1.0;
    const Eigen::VectorXd dir = neg.ldlt().solve(grad);
    // A small gradient alone is not enough: under separation the gradient
    // vanishes while Newton keeps raising some utility. Drifts downwards
    // (bundles never bought) are harmless and end at the gradient test.
    double rise = 0.0;
    for (const auto& row : design.rows) {
      double du = 0.0;
      for (const auto& [col, coef] : row) du += coef * dir[col];
      rise = std::max(rise, du);
    }
    last_step = dir.lpNorm<Eigen::Infinity>();
    last_rise = rise;
    if (grad.lpNorm<Eigen::Infinity>() < spec.grad_tol && rise < 1e-4) {
      converged = true;
      break;
    }
    const double slope = grad.dot(dir);
    double step = 1.0;
    std::vector<double> trial(params.size());
    double ll_new = ll;
    for (int back = 0; back < 60; ++back) {
      for (std::size_t j = 0; j < params.size(); ++j) {
        trial[j] = params[j] + step * dir[static_cast<Eigen::Index>(j)];
      }
      ll_new = evaluate(periods, design, trial, nullptr, nullptr);
      if (ll_new >= ll + 1e-4 * step * slope) break;
      step *= 0.5;
    }
    if (!(ll_new > ll)) break;  // no ascent possible at machine precision
    params = trial;
    for (const auto& row : design.rows) {
      double u = 0.0;
      for (const auto& [col, coef] : row) u += coef * params[static_cast<std::size_t>(col)];
      if (u > spec.param_guard) {
        throw Error(Errc::Separation, "parameter diverges; some bundle is only bought "
                                      "when alone in its choice set");
      }
    }
    ll = evaluate(periods, design, params, &grad, &hess);
  }
  if (!converged) {
    // On large samples the absolute gradient test can sit below the
    // resolution of the likelihood; accept when the Newton step is negligible.
    if (last_step > 1e-6 || last_rise >= 1e-4) {
      throw Error(Errc::NotConverged, "gradient norm " +
                                          std::to_string(grad.lpNorm<Eigen::Infinity>()));
    }
  }
  out.names = design.names;
  out.params = params;
  out.log_likelihood = ll;
  out.iterations = iter;
  out.utilities = utilities_of(design, params);
  std::vector<Hypergraph::UtilityEdge> edges;
  for (std::size_t e = 0; e < structure.num_edges(); ++e) {
    edges.push_back({structure.edge(e).bundle, out.utilities[e], structure.edge(e).revenue});
  }
  out.fitted = Hypergraph::from_utilities(structure.num_products(), std::move(edges));
  return out;
}

}  // namespace

double log_likelihood(const TransactionData& data, const Hypergraph& structure,
                      const UtilityDesign& design, const std::vector<double>& params,
                      std::vector<double>* gradient) {
  const auto periods = prepare(data, structure, all_periods(data));
  Eigen::VectorXd g;
  const double ll = evaluate(periods, design, params, gradient ? &g : nullptr, nullptr);
  if (gradient) gradient->assign(g.data(), g.data() + g.size());
  return ll;
}

FitResult fit_mle(const TransactionData& data, const Hypergraph& structure,
                  const FitSpec& spec) {
  if (data.periods.empty()) throw Error(Errc::NoTransactions, "no periods");
  const auto periods = prepare(data, structure, all_periods(data));
  double total = 0.0;
  for (const auto& p : periods) total += p.total;
  if (total <= 0.0) throw Error(Errc::NoTransactions, "all counts are zero");
  return fit_prepared(data, structure, periods, spec);
}

namespace {

struct Metrics {
  double chi2 = 0.0;
  double sq = 0.0;
  long long skipped = 0;
};

void score(const Hypergraph& fitted, const std::vector<PreparedPeriod>& periods,
           Metrics& m) {
  for (const PreparedPeriod& p : periods) {
    if (p.total <= 0.0) continue;
    double denom = 1.0;
    for (std::size_t e : p.edges) denom += fitted.edge(e).attraction;
    auto cell = [&](double observed, double predicted) {
      const double diff = observed - predicted;
      m.sq += diff * diff;
      if (observed > 0.0) {
        m.chi2 += diff * diff / observed;
      } else {
        ++m.skipped;
      }
    };
    cell(p.outside / p.total, 1.0 / denom);
    for (std::size_t j = 0; j < p.edges.size(); ++j) {
      cell(p.counts[j] / p.total, fitted.edge(p.edges[j]).attraction / denom);
    }
  }
}

}  // namespace

std::vector<CvRow> cross_validate(const TransactionData& data,
                                  const std::vector<Candidate>& candidates, int folds,
                                  const FitSpec& spec) {
  if (folds < 2) throw Error(Errc::InvalidArgument, "need at least two folds");
  if (data.periods.empty()) throw Error(Errc::NoTransactions, "no periods");
  if (static_cast<int>(data.periods.size()) < folds) {
    throw Error(Errc::DegenerateFold, "fewer periods than folds");
  }
  std::vector<Candidate> grid{{1, 1.0}};
  for (const Candidate& c : candidates) {
    if (c.d != 1) grid.push_back(c);
  }
  std::vector<std::vector<std::size_t>> train(static_cast<std::size_t>(folds)),
      test(static_cast<std::size_t>(folds));
  for (std::size_t t = 0; t < data.periods.size(); ++t) {
    const auto f = t % static_cast<std::size_t>(folds);
    for (std::size_t g = 0; g < train.size(); ++g) (g == f ? test : train)[g].push_back(t);
  }
  for (int f = 0; f < folds; ++f) {
    double total = 0.0;
    for (std::size_t t : test[static_cast<std::size_t>(f)]) {
      if (!data.periods[t].assortment.empty()) total += data.periods[t].total();
    }
    if (total <= 0.0) {
      throw Error(Errc::DegenerateFold, "fold " + std::to_string(f + 1) + " has no choices");
    }
  }
  std::vector<Metrics> metrics(grid.size());
  for (std::size_t f = 0; f < train.size(); ++f) {
    TransactionData train_data{data.num_products, data.products, {}};
    for (std::size_t t : train[f]) train_data.periods.push_back(data.periods[t]);
    for (std::size_t c = 0; c < grid.size(); ++c) {
      const Hypergraph structure =
          build_candidate_hypergraph(train_data, grid[c].d, grid[c].theta);
      const FitResult fit = fit_mle(train_data, structure, spec);
      score(*fit.fitted, prepare(data, structure, test[f]), metrics[c]);
    }
  }
  std::vector<CvRow> rows;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    CvRow r;
    r.candidate = grid[c];
    r.chi2 = metrics[c].chi2;
    r.mse = metrics[c].sq;
    r.skipped_cells = metrics[c].skipped;
    rows.push_back(r);
  }
  for (CvRow& r : rows) {
    const CvRow& base = rows.front();
    r.chi2_improve_pct = base.chi2 > 0 ? 100.0 * (base.chi2 - r.chi2) / base.chi2 : 0.0;
    r.mse_improve_pct = base.mse > 0 ? 100.0 * (base.mse - r.mse) / base.mse : 0.0;
  }
  return rows;
}

void write_cv_csv(const std::vector<CvRow>& rows, std::ostream& out) {
  out << "d,theta,chi2,chi2_improve_pct,mse,mse_improve_pct\n";
  for (const CvRow& r : rows) {
    out << r.candidate.d << ',' << format_number(r.candidate.theta) << ','
        << format_number(r.chi2) << ',' << format_number(r.chi2_improve_pct) << ','
        << format_number(r.mse) << ',' << format_number(r.mse_improve_pct) << '\n';
  }
}

TransactionData simulate_transactions(const Hypergraph& truth,
                                      const std::vector<Product>& products, int periods,
                                      int per_period, double offer_prob, std::uint64_t seed) {
  SplitMix64 rng(seed);
  TransactionData data;
  data.num_products = truth.num_products();
  data.products = products;
  for (int t = 0; t < periods; ++t) {
    Assortment x(static_cast<std::size_t>(truth.num_products()), 0);
    for (auto& xi : x) xi = rng.uniform() < offer_prob ? 1 : 0;
    const ChoiceProbabilities probs = choice_probabilities(truth, x);
    Period p;
    p.assortment = Bundle(assortment_items(x));
    std::vector<double> tally(truth.num_edges(), 0.0);
    for (int k = 0; k < per_period; ++k) {
      double u = rng.uniform() - probs.rho;
      if (u < 0.0) {
        p.outside += 1.0;
        continue;
      }
      std::size_t e = 0;
      for (; e + 1 < truth.num_edges(); ++e) {
        u -= probs.bundle[e];
        if (u < 0.0) break;
      }
      // Rounding can leave u marginally positive; attribute to the last
      // edge with positive probability.
      while (probs.bundle[e] == 0.0 && e > 0) --e;
      if (probs.bundle[e] == 0.0) {
        p.outside += 1.0;
      } else {
        tally[e] += 1.0;
      }
    }
    for (std::size_t e = 0; e < tally.size(); ++e) {
      if (tally[e] > 0) p.counts[truth.edge(e).bundle] = tally[e];
    }
    data.periods.push_back(std::move(p));
  }
  return data;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               const std::vector<std::string>& header) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::ParseError, path + " is empty");
  auto cols = split(trim(line), ',');
  for (auto& c : cols) c = trim(c);
  if (cols != header) {
    std::string want;
    for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
    throw Error(Errc::ParseError, path + ": expected header '" + want + "'");
  }
  std::vector<std::vector<std::string>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto f = split(trim(line), ',');
    if (f.size() != header.size()) {
      throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) + ": wrong field count");
    }
    for (auto& v : f) v = trim(v);
    rows.push_back(std::move(f));
  }
  return rows;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad " + what + " '" + s + "'");
  }
}

long long to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != std::floor(v)) throw Error(Errc::ParseError, "bad " + what + " '" + s + "'");
  return static_cast<long long>(v);
}

Bundle parse_items(const std::string& s) {
  if (s.empty() || s == "0") return {};
  std::vector<int> items;
  for (const auto& part : split(s, ';')) items.push_back(static_cast<int>(to_int(trim(part), "item")));
  try {
    return Bundle(std::move(items));
  } catch (const Error& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

std::string items_text(const Bundle& b) {
  if (b.empty()) return "0";
  std::string out;
  for (int i : b.items()) out += (out.empty() ? "" : ";") + std::to_string(i);
  return out;
}

}  // namespace

TransactionData read_transactions(const std::string& transactions_csv,
                                  const std::string& assortments_csv,
                                  const std::string& products_csv) {
  TransactionData data;
  const auto prows = read_csv(products_csv, {"item", "category", "price"});
  std::map<int, Product> products;
  for (const auto& r : prows) {
    const int item = static_cast<int>(to_int(r[0], "item"));
    const long long cat = to_int(r[1], "category");
    if (cat < 1) throw Error(Errc::ParseError, "categories are numbered from 1");
    products[item] = Product{static_cast<int>(cat - 1), to_double(r[2], "price")};
  }
  data.num_products = static_cast<int>(products.size());
  for (int i = 1; i <= data.num_products; ++i) {
    auto it = products.find(i);
    if (it == products.end()) throw Error(Errc::ParseError, "products must be numbered 1..N");
    data.products.push_back(it->second);
  }
  std::map<long long, Period> periods;
  for (const auto& r : read_csv(assortments_csv, {"period", "items"})) {
    periods[to_int(r[0], "period")].assortment = parse_items(r[1]);
  }
  std::set<long long> has_outside;
  for (const auto& r : read_csv(transactions_csv, {"period", "bundle", "count"})) {
    const long long t = to_int(r[0], "period");
    auto it = periods.find(t);
    if (it == periods.end()) {
      throw Error(Errc::ParseError, "period " + r[0] + " has no assortment row");
    }
    const double count = to_double(r[2], "count");
    if (count < 0) throw Error(Errc::ParseError, "negative count");
    const Bundle b = parse_items(r[1]);
    if (b.empty()) {
      it->second.outside += count;
      has_outside.insert(t);
    } else {
      it->second.counts[b] += count;
    }
  }
  for (auto& [t, p] : periods) {
    if (!has_outside.contains(t)) {
      throw Error(Errc::ParseError, "period " + std::to_string(t) +
                                        " has no outside-option row (bundle 0)");
    }
    data.periods.push_back(std::move(p));
  }
  try {
    data.validate();
  } catch (const Error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return data;
}

void write_transactions(const TransactionData& data, const std::string& transactions_csv,
                        const std::string& assortments_csv, const std::string& products_csv) {
  std::ofstream tr(transactions_csv), as(assortments_csv), pr(products_csv);
  if (!tr || !as || !pr) throw Error(Errc::InvalidArgument, "cannot write CSV output");
  pr << "item,category,price\n";
  for (int i = 1; i <= data.num_products; ++i) {
    const Product& p = data.products[static_cast<std::size_t>(i - 1)];
    pr << i << ',' << p.category + 1 << ',' << format_number(p.price) << '\n';
  }
  as << "period,items\n";
  tr << "period,bundle,count\n";
  for (std::size_t t = 0; t < data.periods.size(); ++t) {
    const Period& p = data.periods[t];
    as << t + 1 << ',' << items_text(p.assortment) << '\n';
    tr << t + 1 << ",0," << format_number(p.outside) << '\n';
    for (const auto& [b, c] : p.counts) tr << t + 1 << ',' << items_text(b) << ',' << format_number(c) << '\n';
  }
}

}  // namespace logitmp
