#pragma once

#include <array>
#include <string>
#include <vector>

#include "logitmp/choice_model.hpp"
#include "logitmp/formulations.hpp"
#include "logitmp/separation.hpp"
#include "logitmp/solver_backend.hpp"

namespace logitmp {

struct CutConfig {
  int max_iters = 500;
  double eps = 1e-5;
  double sep_time_limit_s = 800.0;
  bool x_bounds = true;
  bool odd_cycle = false;
  bool running_intersection = false;
  int m_bar = 3;
  // Iterations with cuts but an unchanged LP objective before giving up.
  int stall_iters = 10;
};

struct CutLogEntry {
  int iteration = 0;
  Cut cut;
};

struct SolveReport {
  double lp_obj_initial = 0.0;
  double lp_obj_final = 0.0;
  double mip_obj = 0.0;
  double mip_bound = 0.0;
  double root_gap_pct = 0.0;
  SolveStatus mip_status = SolveStatus::Infeasible;
  // Indexed by CutFamily.
  std::array<int, 4> cuts_added{};
  int iterations = 0;
  double sep_time_s = 0.0;
  double solve_time_s = 0.0;
  long long node_count = 0;
  bool stalled = false;
  std::vector<double> lp_history;
  Assortment assortment;
  // LP point of the last relaxation solved.
  FractionalPoint final_point;

  int total_cuts() const {
    return cuts_added[0] + cuts_added[1] + cuts_added[2] + cuts_added[3];
  }
};

// 100 (lp - mip) / mip for positive mip; 0 when both agree at a zero optimum.
double root_gap_pct(double lp_obj, double mip_obj);

// Point of the perspective model at LP values.
FractionalPoint point_from_solution(const ModelIR& model, const Hypergraph& graph,
                                    const std::vector<Bundle>& auxiliary,
                                    const std::vector<double>& values);

// Base perspective model with RMC rows and the revenue objective, then
// LP / separate rounds and a final MIP solve over the strengthened model.
SolveReport solve_with_cuts(const Hypergraph& graph, const ConstraintSet& constraints,
                            const CutConfig& config, Backend& backend,
                            const SolveParams& params,
                            std::vector<CutLogEntry>* log = nullptr);

// Solve a complete model once (used for Big-M and conic runs): the LP
// relaxation first for the root gap, then the MIP.
SolveReport solve_direct(const ModelIR& model, Backend& backend,
                         const SolveParams& params);

}  // namespace logitmp
