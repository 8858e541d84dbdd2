#pragma once

#include <functional>
#include <string>
#include <vector>

#include "logitmp/bundle.hpp"

namespace logitmp {

// Symbolic model variable. Rho carries an empty bundle, X carries the
// singleton of its item, Y and Z carry the bundle they are indexed by.
enum class VarKind { Rho, Y, Z, X };

struct Var {
  VarKind kind = VarKind::Rho;
  Bundle bundle;

  static Var rho() { return {VarKind::Rho, {}}; }
  static Var y(Bundle b) { return {VarKind::Y, std::move(b)}; }
  static Var z(Bundle b) { return {VarKind::Z, std::move(b)}; }
  static Var x(int item) { return {VarKind::X, Bundle::singleton(item)}; }

  // rho, y_1_2, z_1_2, x_3
  std::string name() const;

  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var& a, const Var& b) {
    if (a.kind != b.kind) return a.kind <=> b.kind;
    if (a.bundle.size() != b.bundle.size()) {
      return a.bundle.size() <=> b.bundle.size();
    }
    return a.bundle <=> b.bundle;
  }
};

struct Term {
  Var var;
  double coef = 0.0;
};

enum class Sense { Le, Ge, Eq };

// sum(coef * var) <sense> rhs
struct LinearRow {
  std::vector<Term> terms;
  Sense sense = Sense::Le;
  double rhs = 0.0;

  LinearRow& add(Var v, double coef) {
    terms.push_back({std::move(v), coef});
    return *this;
  }

  // Merges repeated variables, drops zero coefficients and sorts the terms.
  LinearRow normalized() const;

  // "1 y_1_2 - 1 y_1 <= 0" after normalization, with shortest round-trip
  // formatting of coefficients. Stable across runs.
  std::string str() const;
};

using VarValue = std::function<double(const Var&)>;

double lhs_value(const LinearRow& row, const VarValue& value);
// Amount by which the row is violated (positive) or slack (negative).
double violation(const LinearRow& row, const VarValue& value);

std::string format_number(double value);

}  // namespace logitmp
