#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "logitmp/model_ir.hpp"

namespace logitmp {

struct SolveParams {
  double time_limit_s = 3600.0;
  double rel_gap = 5e-4;
  double abs_gap = 1e-9;
  int threads = 1;
  int seed = 0;
  // When non-empty, a model whose solve fails or ends infeasible is written
  // here in LP format.
  std::string dump_path;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded, TimeLimit };

std::string_view status_name(SolveStatus status);

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  double objective = 0.0;
  double best_bound = 0.0;
  std::vector<double> values;
  long long node_count = 0;
  double solve_time_s = 0.0;

  bool has_values() const {
    return status == SolveStatus::Optimal || status == SolveStatus::Feasible;
  }
};

struct Capabilities {
  bool mip = false;
  bool cones = false;
};

// A model loaded into the backend, kept alive between solves so rows can be
// appended and the next LP warm-started from the previous basis.
class Session {
 public:
  virtual ~Session() = default;
  virtual void add_rows(const std::vector<Row>& rows) = 0;
  // relax = true solves the continuous relaxation.
  virtual Solution solve(bool relax) = 0;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  virtual Capabilities capabilities() const = 0;
  // Primal feasibility tolerance used for every solve.
  virtual double feasibility_tolerance() const = 0;
  // Throws ConeUnsupported if the model has cone rows the backend cannot
  // handle, BackendFailure on solver errors.
  virtual Solution solve(const ModelIR& model, const SolveParams& params) = 0;
  virtual std::unique_ptr<Session> open(const ModelIR& model,
                                        const SolveParams& params) = 0;
};

// Name "" falls back to $LOGITMP_BACKEND, then to "highs".
std::unique_ptr<Backend> make_backend(std::string_view name = "");

}  // namespace logitmp
