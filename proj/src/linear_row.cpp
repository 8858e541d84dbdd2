#include "logitmp/linear_row.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace logitmp {

std::string Var::name() const {
  switch (kind) {
    case VarKind::Rho: return "rho";
    case VarKind::Y: return "y_" + bundle.key();
    case VarKind::Z: return "z_" + bundle.key();
    case VarKind::X: return "x_" + bundle.key();
  }
  return "?";
}

LinearRow LinearRow::normalized() const {
  LinearRow out;
  out.sense = sense;
  out.rhs = rhs;
  std::vector<Term> sorted = terms;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Term& a, const Term& b) { return a.var < b.var; });
  for (const Term& t : sorted) {
    if (!out.terms.empty() && out.terms.back().var == t.var) {
      out.terms.back().coef += t.coef;
    } else {
      out.terms.push_back(t);
    }
  }
  std::erase_if(out.terms, [](const Term& t) { return t.coef == 0.0; });
  return out;
}

std::string format_number(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value == 0.0 ? 0.0 : value);
  return std::string(buf, res.ptr);
}

std::string LinearRow::str() const {
  const LinearRow norm = normalized();
  std::string out;
  for (std::size_t k = 0; k < norm.terms.size(); ++k) {
    const Term& t = norm.terms[k];
    if (k == 0) {
      if (t.coef < 0) out += "-";
    } else {
      out += t.coef < 0 ? " - " : " + ";
    }
    out += format_number(std::abs(t.coef)) + " " + t.var.name();
  }
  if (norm.terms.empty()) out = "0";
  switch (norm.sense) {
    case Sense::Le: out += " <= "; break;
    case Sense::Ge: out += " >= "; break;
    case Sense::Eq: out += " = "; break;
  }
  return out + format_number(norm.rhs);
}

double lhs_value(const LinearRow& row, const VarValue& value) {
  double lhs = 0.0;
  for (const Term& t : row.terms) lhs += t.coef * value(t.var);
  return lhs;
}

double violation(const LinearRow& row, const VarValue& value) {
  const double lhs = lhs_value(row, value);
  switch (row.sense) {
    case Sense::Le: return lhs - row.rhs;
    case Sense::Ge: return row.rhs - lhs;
    case Sense::Eq: return std::abs(lhs - row.rhs);
  }
  return 0.0;
}

}  // namespace logitmp
