#pragma once

#include <string>
#include <vector>

#include "kdvsym/context.hpp"
#include "kdvsym/expr.hpp"
#include "kdvsym/vector_field.hpp"

namespace kdvsym {

/// Coefficients of a symmetry operator written in terms of unknown functions.
struct Ansatz {
  VectorField field;
  std::vector<Atom> unknowns;          // underived function atoms with their current signatures
  std::vector<std::string> constants;  // arbitrary constants introduced along the way

  bool is_unknown(const Atom& a) const;  // any derivative instance of an unknown
};

enum class Provenance { Paper, Generated };

struct DetEquation {
  Expr lhs;  // the equation is lhs = 0
  std::string anchor;
  Provenance provenance = Provenance::Generated;
};

enum class AssumptionKind { FunctionIsConstant, FunctionHasForm, ParameterNonzero };

struct CaseAssumption {
  AssumptionKind kind;
  std::string subject;  // function or parameter name
  Expr detail;          // constant value or form; unused for ParameterNonzero
  std::string text;
};

struct DetSystem {
  std::string name;
  std::vector<DetEquation> equations;
  Ansatz ansatz;
  std::vector<CaseAssumption> assumptions;
  std::vector<std::string> notes;
};

std::string to_string(Provenance p);
std::string to_string(AssumptionKind k);

/// Numerator of e with factors known to be nonzero removed, denominators
/// cleared, integer content removed and a positive leading coefficient.
Expr simplify_equation(const Expr& e, const Context& ctx);

/// Simplifies every equation, drops zeros and duplicates, and sorts by
/// leading monomial.
std::vector<Expr> simplify_equations(const std::vector<Expr>& eqs, const Context& ctx);

/// Human-readable form of a whole system, one equation per line.
std::string format_det_system(const DetSystem& sys);

}  // namespace kdvsym
