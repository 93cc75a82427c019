#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kdvsym/context.hpp"
#include "kdvsym/expr.hpp"

namespace kdvsym {

/// Infinitesimal generator xi0*d/dt + xi1*d/dx + eta*d/du [+ eta2*d/dv].
/// Coefficients are keyed by the base variable they multiply.
struct VectorField {
  std::map<std::string, Expr> coeffs;

  Expr coeff(const std::string& var) const;
  void set(const std::string& var, const Expr& e) { coeffs[var] = e; }
  std::vector<std::string> dependents() const;  // dependent variables with a coefficient slot
  VectorField scaled(const Rational& c) const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
};

/// Parses "X = <expr>*d/dt + <expr>*d/dx + <expr>*d/du [+ <expr>*d/dv]"; the
/// "X =" prefix is optional and terms may appear in any order or repeat.
VectorField parse_vector_field(std::string_view text, const Context& ctx);
std::string format_vector_field(const VectorField& X);

}  // namespace kdvsym
