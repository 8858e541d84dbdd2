#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "logitmp/linear_row.hpp"

namespace logitmp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Column {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool integer = false;
};

using SparseVec = std::vector<std::pair<int, double>>;

// lower <= sum coeffs <= upper
struct Row {
  SparseVec coeffs;
  double lower = -kInf;
  double upper = kInf;
};

struct Affine {
  SparseVec terms;
  double constant = 0.0;
};

// Rotated cone a * b >= sum_k squares_k^2 with a, b >= 0.
struct ConeRow {
  Affine a;
  Affine b;
  std::vector<Affine> squares;
};

struct Objective {
  bool maximize = true;
  SparseVec coeffs;
  double offset = 0.0;
};

enum class ModelKind { Generic, Perspective, BigM };

// Solver-agnostic model. Columns are addressed by name; symbolic variables
// map to names through column_name(var, segment), where segment < 0 means
// the model has a single customer segment.
class ModelIR {
 public:
  ModelKind kind = ModelKind::Generic;
  std::vector<Column> columns;
  std::vector<Row> rows;
  std::vector<ConeRow> cones;
  Objective objective;

  int add_column(Column column);
  std::optional<int> find_column(const std::string& name) const;
  int column(const Var& var, int segment = -1) const;
  bool has_column(const Var& var, int segment = -1) const {
    return find_column(column_name(var, segment)).has_value();
  }

  Row to_row(const LinearRow& row, int segment = -1) const;
  void add_row(const LinearRow& row, int segment = -1) {
    rows.push_back(to_row(row, segment));
  }

  double value(const std::vector<double>& values, const Var& var,
               int segment = -1) const {
    return values[static_cast<std::size_t>(column(var, segment))];
  }

  // Segment-qualified identifier; x columns are shared by all segments.
  static std::string column_name(const Var& var, int segment);

  // Checks row references and bound consistency; throws InvalidArgument.
  void validate() const;

 private:
  std::unordered_map<std::string, int> index_;
};

// All integer columns become continuous, bounds unchanged.
ModelIR lp_relax(const ModelIR& model);

// CPLEX LP text. Cone rows are written as comments.
void write_lp(const ModelIR& model, std::ostream& out);
void write_lp_file(const ModelIR& model, const std::string& path);

// Largest bound or row violation of `values` (cones ignored).
double max_infeasibility(const ModelIR& model, const std::vector<double>& values);

double cone_slack(const ConeRow& cone, const std::vector<double>& values);

}  // namespace logitmp
