#include "logitmp/model_ir.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "logitmp/error.hpp"

namespace logitmp {

int ModelIR::add_column(Column column) {
  if (index_.contains(column.name)) {
    throw Error(Errc::InvalidArgument, "duplicate column " + column.name);
  }
  const int id = static_cast<int>(columns.size());
  index_.emplace(column.name, id);
  columns.push_back(std::move(column));
  return id;
}

std::optional<int> ModelIR::find_column(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string ModelIR::column_name(const Var& var, int segment) {
  if (segment < 0 || var.kind == VarKind::X) return var.name();
  const std::string tag = "s" + std::to_string(segment + 1);
  switch (var.kind) {
    case VarKind::Rho: return "rho_" + tag;
    case VarKind::Y: return "y_" + tag + "_" + var.bundle.key();
    case VarKind::Z: return "z_" + tag + "_" + var.bundle.key();
    case VarKind::X: break;
  }
  return var.name();
}

int ModelIR::column(const Var& var, int segment) const {
  const std::string name = column_name(var, segment);
  auto id = find_column(name);
  if (!id) throw Error(Errc::UnknownBundle, "no column " + name);
  return *id;
}

Row ModelIR::to_row(const LinearRow& row, int segment) const {
  const LinearRow norm = row.normalized();
  Row out;
  for (const Term& t : norm.terms) out.coeffs.emplace_back(column(t.var, segment), t.coef);
  switch (norm.sense) {
    case Sense::Le: out.upper = norm.rhs; break;
    case Sense::Ge: out.lower = norm.rhs; break;
    case Sense::Eq: out.lower = out.upper = norm.rhs; break;
  }
  return out;
}

void ModelIR::validate() const {
  const int n = static_cast<int>(columns.size());
  for (const Column& c : columns) {
    if (!(c.lower <= c.upper)) {
      throw Error(Errc::InvalidArgument, "column " + c.name + " has lower > upper");
    }
  }
  auto check = [n](const SparseVec& v) {
    for (const auto& [col, coef] : v) {
      if (col < 0 || col >= n || !std::isfinite(coef)) {
        throw Error(Errc::InvalidArgument, "row references an invalid column");
      }
    }
  };
  for (const Row& r : rows) {
    check(r.coeffs);
    if (!(r.lower <= r.upper)) {
      throw Error(Errc::InvalidArgument, "row has lower > upper");
    }
  }
  for (const ConeRow& c : cones) {
    check(c.a.terms);
    check(c.b.terms);
    for (const Affine& s : c.squares) check(s.terms);
  }
  check(objective.coeffs);
}

ModelIR lp_relax(const ModelIR& model) {
  ModelIR out = model;
  for (Column& c : out.columns) c.integer = false;
  return out;
}

namespace {

void write_expr(std::ostream& out, const ModelIR& model, const SparseVec& v) {
  if (v.empty()) {
    out << " 0 " << model.columns.front().name;
    return;
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto& [col, coef] = v[k];
    out << (coef < 0 ? " - " : (k == 0 ? " " : " + ")) << format_number(std::abs(coef))
        << ' ' << model.columns[static_cast<std::size_t>(col)].name;
    if (k % 8 == 7 && k + 1 < v.size()) out << "\n   ";
  }
}

std::string bound_text(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  return format_number(v);
}

}  // namespace

void write_lp(const ModelIR& model, std::ostream& out) {
  out << "\\ logitmp model\n";
  out << (model.objective.maximize ? "Maximize\n" : "Minimize\n") << " obj:";
  SparseVec obj = model.objective.coeffs;
  if (obj.empty() && !model.columns.empty()) obj.emplace_back(0, 0.0);
  write_expr(out, model, obj);
  out << "\nSubject To\n";
  int id = 0;
  for (const Row& r : model.rows) {
    auto emit = [&](const char* op, double rhs) {
      out << " c" << ++id << ':';
      write_expr(out, model, r.coeffs);
      out << ' ' << op << ' ' << format_number(rhs) << '\n';
    };
    if (r.lower == r.upper) {
      emit("=", r.lower);
    } else {
      if (r.lower > -kInf) emit(">=", r.lower);
      if (r.upper < kInf) emit("<=", r.upper);
    }
  }
  for (const ConeRow& c : model.cones) {
    out << "\\ cone: (a)(b) >= sum of " << c.squares.size() << " squares\n";
  }
  out << "Bounds\n";
  for (const Column& c : model.columns) {
    out << ' ' << bound_text(c.lower) << " <= " << c.name << " <= "
        << bound_text(c.upper) << '\n';
  }
  bool any_int = std::any_of(model.columns.begin(), model.columns.end(),
                             [](const Column& c) { return c.integer; });
  if (any_int) {
    out << "General\n";
    for (const Column& c : model.columns) {
      if (c.integer) out << ' ' << c.name << '\n';
    }
  }
  out << "End\n";
}

void write_lp_file(const ModelIR& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  write_lp(model, out);
}

double max_infeasibility(const ModelIR& model, const std::vector<double>& values) {
  double worst = 0.0;
  for (std::size_t k = 0; k < model.columns.size(); ++k) {
    worst = std::max({worst, model.columns[k].lower - values[k],
                      values[k] - model.columns[k].upper});
  }
  for (const Row& r : model.rows) {
    double lhs = 0.0;
    for (const auto& [col, coef] : r.coeffs) lhs += coef * values[static_cast<std::size_t>(col)];
    worst = std::max({worst, r.lower - lhs, lhs - r.upper});
  }
  return worst;
}

double cone_slack(const ConeRow& cone, const std::vector<double>& values) {
  auto eval = [&](const Affine& a) {
    double s = a.constant;
    for (const auto& [col, coef] : a.terms) s += coef * values[static_cast<std::size_t>(col)];
    return s;
  };
  double rhs = 0.0;
  for (const Affine& s : cone.squares) {
    const double v = eval(s);
    rhs += v * v;
  }
  return eval(cone.a) * eval(cone.b) - rhs;
}

}  // namespace logitmp
