#include <Highs.h>

#include <chrono>
#include <cstdlib>

#include "logitmp/error.hpp"
#include "logitmp/solver_backend.hpp"

namespace logitmp {

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::TimeLimit: return "TimeLimit";
  }
  return "Unknown";
}

namespace {

constexpr double kFeasTol = 1e-9;

void configure(Highs& h, const SolveParams& p) {
  h.setOptionValue("output_flag", false);
  h.setOptionValue("threads", p.threads);
  h.setOptionValue("random_seed", p.seed);
  h.setOptionValue("time_limit", p.time_limit_s);
  h.setOptionValue("mip_rel_gap", p.rel_gap);
  h.setOptionValue("mip_abs_gap", p.abs_gap);
  h.setOptionValue("primal_feasibility_tolerance", kFeasTol);
  h.setOptionValue("dual_feasibility_tolerance", kFeasTol);
  h.setOptionValue("mip_feasibility_tolerance", kFeasTol);
}

HighsLp to_highs(const ModelIR& model) {
  HighsLp lp;
  const auto n = static_cast<HighsInt>(model.columns.size());
  lp.num_col_ = n;
  lp.num_row_ = static_cast<HighsInt>(model.rows.size());
  lp.col_cost_.assign(static_cast<std::size_t>(n), 0.0);
  for (const auto& [col, coef] : model.objective.coeffs) {
    lp.col_cost_[static_cast<std::size_t>(col)] += coef;
  }
  lp.offset_ = model.objective.offset;
  lp.sense_ = model.objective.maximize ? ObjSense::kMaximize : ObjSense::kMinimize;
  bool any_int = false;
  for (const Column& c : model.columns) {
    lp.col_lower_.push_back(c.lower);
    lp.col_upper_.push_back(c.upper);
    lp.col_names_.push_back(c.name);
    lp.integrality_.push_back(c.integer ? HighsVarType::kInteger
                                        : HighsVarType::kContinuous);
    any_int = any_int || c.integer;
  }
  if (!any_int) lp.integrality_.clear();
  lp.a_matrix_.format_ = MatrixFormat::kRowwise;
  lp.a_matrix_.num_col_ = lp.num_col_;
  lp.a_matrix_.num_row_ = lp.num_row_;
  lp.a_matrix_.start_.assign(1, 0);
  for (const Row& r : model.rows) {
    lp.row_lower_.push_back(r.lower);
    lp.row_upper_.push_back(r.upper);
    for (const auto& [col, coef] : r.coeffs) {
      lp.a_matrix_.index_.push_back(static_cast<HighsInt>(col));
      lp.a_matrix_.value_.push_back(coef);
    }
    lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
  }
  lp.a_matrix_.ensureColwise();
  return lp;
}

Solution extract(Highs& h, bool is_mip, double seconds) {
  Solution s;
  s.solve_time_s = seconds;
  const HighsInfo& info = h.getInfo();
  const bool has_primal = info.primal_solution_status == kSolutionStatusFeasible;
  switch (h.getModelStatus()) {
    case HighsModelStatus::kOptimal:
    case HighsModelStatus::kModelEmpty:
      s.status = SolveStatus::Optimal;
      break;
    case HighsModelStatus::kInfeasible:
      s.status = SolveStatus::Infeasible;
      break;
    case HighsModelStatus::kUnbounded:
    case HighsModelStatus::kUnboundedOrInfeasible:
      s.status = SolveStatus::Unbounded;
      break;
    case HighsModelStatus::kTimeLimit:
    case HighsModelStatus::kIterationLimit:
    case HighsModelStatus::kSolutionLimit:
    case HighsModelStatus::kInterrupt:
      s.status = (is_mip && has_primal) ? SolveStatus::Feasible : SolveStatus::TimeLimit;
      break;
    default:
      throw Error(Errc::BackendFailure,
                  "HiGHS status " + h.modelStatusToString(h.getModelStatus()));
  }
  if (s.has_values()) {
    s.objective = info.objective_function_value;
    s.values = h.getSolution().col_value;
  }
  if (is_mip) {
    s.node_count = static_cast<long long>(info.mip_node_count);
    s.best_bound = s.has_values() || s.status == SolveStatus::TimeLimit
                       ? info.mip_dual_bound
                       : 0.0;
    if (s.status == SolveStatus::Optimal && h.getLp().num_col_ == 0) s.best_bound = s.objective;
  } else {
    s.best_bound = s.objective;
  }
  return s;
}

class HighsSession final : public Session {
 public:
  HighsSession(const ModelIR& model, const SolveParams& params)
      : params_(params), integer_(model.columns.size(), 0) {
    configure(highs_, params_);
    for (std::size_t k = 0; k < model.columns.size(); ++k) {
      integer_[k] = model.columns[k].integer ? 1 : 0;
    }
    if (highs_.passModel(to_highs(model)) == HighsStatus::kError) {
      throw Error(Errc::BackendFailure, "HiGHS rejected the model");
    }
  }

  void add_rows(const std::vector<Row>& rows) override {
    if (rows.empty()) return;
    std::vector<double> lower, upper, value;
    std::vector<HighsInt> start, index;
    for (const Row& r : rows) {
      lower.push_back(r.lower);
      upper.push_back(r.upper);
      start.push_back(static_cast<HighsInt>(index.size()));
      for (const auto& [col, coef] : r.coeffs) {
        index.push_back(static_cast<HighsInt>(col));
        value.push_back(coef);
      }
    }
    const HighsStatus st = highs_.addRows(
        static_cast<HighsInt>(rows.size()), lower.data(), upper.data(),
        static_cast<HighsInt>(index.size()), start.data(), index.data(), value.data());
    if (st == HighsStatus::kError) throw Error(Errc::BackendFailure, "addRows failed");
  }

  Solution solve(bool relax) override {
    const std::size_t n = integer_.size();
    const bool any_int = std::any_of(integer_.begin(), integer_.end(),
                                     [](HighsInt v) { return v != 0; });
    const bool is_mip = any_int && !relax;
    if (any_int) {
      std::vector<HighsVarType> kinds(n);
      for (std::size_t k = 0; k < n; ++k) {
        kinds[k] = (integer_[k] && !relax) ? HighsVarType::kInteger
                                           : HighsVarType::kContinuous;
      }
      highs_.changeColsIntegrality(0, static_cast<HighsInt>(n) - 1, kinds.data());
    }
    const auto t0 = std::chrono::steady_clock::now();
    const HighsStatus st = highs_.run();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (st == HighsStatus::kError) {
      dump();
      throw Error(Errc::BackendFailure, "HiGHS run failed");
    }
    Solution s = extract(highs_, is_mip, secs);
    if (s.status == SolveStatus::Infeasible) dump();
    return s;
  }

 private:
  void dump() {
    if (!params_.dump_path.empty()) highs_.writeModel(params_.dump_path);
  }

  Highs highs_;
  SolveParams params_;
  std::vector<HighsInt> integer_;
};

class HighsBackend final : public Backend {
 public:
  std::string name() const override { return "highs"; }
  Capabilities capabilities() const override { return {true, false}; }
  double feasibility_tolerance() const override { return kFeasTol; }

  Solution solve(const ModelIR& model, const SolveParams& params) override {
    auto session = open(model, params);
    return session->solve(false);
  }

  std::unique_ptr<Session> open(const ModelIR& model,
                                const SolveParams& params) override {
    if (!model.cones.empty()) {
      throw Error(Errc::ConeUnsupported,
                  "the highs backend has no second-order cone support");
    }
    model.validate();
    return std::make_unique<HighsSession>(model, params);
  }
};

}  // namespace

std::unique_ptr<Backend> make_backend(std::string_view name) {
  std::string chosen(name);
  if (chosen.empty()) {
    const char* env = std::getenv("LOGITMP_BACKEND");
    chosen = env ? env : "highs";
  }
  if (chosen == "highs") return std::make_unique<HighsBackend>();
  throw Error(Errc::BackendFailure, "unknown backend '" + chosen + "'");
}

}  // namespace logitmp
