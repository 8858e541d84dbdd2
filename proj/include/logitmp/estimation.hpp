#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logitmp/hypergraph.hpp"

namespace logitmp {

struct Product {
  int category = 0;  // 0-based
  double price = 0.0;
};

struct Period {
  Bundle assortment;
  // Sales of bundles (including singletons) bought in this period.
  std::map<Bundle, double> counts;
  // No-purchase count.
  double outside = 0.0;

  double total() const;
};

struct TransactionData {
  int num_products = 0;
  std::vector<Product> products;  // indexed by item - 1
  std::vector<Period> periods;

  int num_categories() const;
  void validate() const;
};

// E_{d,theta}: singletons plus the ceil(theta |E_d \ V|) multi-item bundles
// of size <= d with the largest total counts (ties canonical). v = 1 and
// r = sum of prices. Throws NoTransactions.
Hypergraph build_candidate_hypergraph(const TransactionData& data, int d, double theta);

struct FitSpec {
  // One free alpha per item instead of category effects plus price.
  bool per_item_alpha = false;
  int max_iters = 200;
  double grad_tol = 1e-6;
  double param_guard = 30.0;
};

struct FitResult {
  std::vector<std::string> names;
  std::vector<double> params;
  double log_likelihood = 0.0;
  int iterations = 0;
  // Fitted utility per edge of the structure, indexed like edges().
  std::vector<double> utilities;
  // Structure with v = exp(u).
  std::optional<Hypergraph> fitted;
};

// Linear utility map u = A params for the structure.
struct UtilityDesign {
  std::vector<std::string> names;
  std::vector<std::vector<std::pair<int, double>>> rows;  // per edge
};
UtilityDesign utility_design(const TransactionData& data, const Hypergraph& structure,
                             const FitSpec& spec);

double log_likelihood(const TransactionData& data, const Hypergraph& structure,
                      const UtilityDesign& design, const std::vector<double>& params,
                      std::vector<double>* gradient = nullptr);

// Newton ascent on the concave log-likelihood. Throws Separation or
// NotConverged.
FitResult fit_mle(const TransactionData& data, const Hypergraph& structure,
                  const FitSpec& spec = {});

struct Candidate {
  int d = 1;
  double theta = 1.0;
};

// Both metrics sum over held-out periods and cells (the outside option and
// each offered modeled bundle); chi2 skips cells with zero observed share.
struct CvRow {
  Candidate candidate;
  double chi2 = 0.0;
  double mse = 0.0;
  double chi2_improve_pct = 0.0;
  double mse_improve_pct = 0.0;
  long long skipped_cells = 0;
};

// Period t is held out in fold t mod folds. The d = 1 baseline is always the
// first row. Throws DegenerateFold.
std::vector<CvRow> cross_validate(const TransactionData& data,
                                  const std::vector<Candidate>& candidates, int folds = 5,
                                  const FitSpec& spec = {});

void write_cv_csv(const std::vector<CvRow>& rows, std::ostream& out);

// Draws transactions from `truth`; each item is offered with probability
// offer_prob in each period.
TransactionData simulate_transactions(const Hypergraph& truth,
                                      const std::vector<Product>& products, int periods,
                                      int per_period, double offer_prob, std::uint64_t seed);

// CSV files: transactions (period,bundle,count with bundle "0" for the
// outside option), assortments (period,items) and products
// (item,category,price). Throws ParseError on schema problems.
TransactionData read_transactions(const std::string& transactions_csv,
                                  const std::string& assortments_csv,
                                  const std::string& products_csv);
void write_transactions(const TransactionData& data, const std::string& transactions_csv,
                        const std::string& assortments_csv, const std::string& products_csv);

}  // namespace logitmp
