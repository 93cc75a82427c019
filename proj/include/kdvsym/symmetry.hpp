#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kdvsym/context.hpp"
#include "kdvsym/expr.hpp"
#include "kdvsym/jet.hpp"
#include "kdvsym/vector_field.hpp"
#include "kdvsym/determining.hpp"

namespace kdvsym {

/// Lazily computed prolongation eta^J of a field, by the recursion
/// eta^{J+i} = D_i eta^J - sum_k w_{J+k} D_i xi^k.
class Prolongation {
 public:
  Prolongation(VectorField X, JetSpace space);

  const Expr& eta(const std::string& w, const JetIndex& J);
  /// Applies the prolonged field as a derivation to an expression in jet space.
  Expr apply(const Expr& e);

  const VectorField& field() const { return X_; }
  const JetSpace& space() const { return space_; }

 private:
  VectorField X_;
  JetSpace space_;
  std::map<std::pair<std::string, std::pair<int, int>>, Expr> memo_;
};

/// All eta^J for |J| <= order, keyed by jet coordinate.
std::vector<std::pair<Atom, Expr>> prolong(const VectorField& X, const JetSpace& space, int order);

/// One reduced residual per rule of the manifold: reduce(eta^head - X(rhs)).
std::vector<Expr> invariance_residual(const VectorField& X, const SolutionManifold& m);

/// Coefficients of the residual viewed as a polynomial in the jet coordinates
/// of order >= 1, and in u or v when nothing else in the residual depends on them.
struct SplitTerm {
  Monomial basis;
  Expr coefficient;
};
std::vector<SplitTerm> split_residual(const Expr& residual);

/// Result of shrinking a general ansatz with the trivially solvable members of
/// its raw determining system.
struct AnsatzReduction {
  Ansatz ansatz;
  std::vector<Expr> equations;     // surviving equations, simplified and sorted
  std::vector<std::string> steps;  // one line per refinement
};

/// Repeats until nothing changes: f_s = 0 removes s from the signature of f
/// (f becomes a constant when no variable is left); f_ss = 0 for a dependent
/// variable s makes f linear in s. Equations free of u (or v) split by its
/// powers. When no such equation is present, derivatives of the equations with
/// respect to u and v are searched for one by exact elimination.
AnsatzReduction reduce_ansatz(const std::vector<Expr>& raw, Ansatz ansatz, Context& ctx);

}  // namespace kdvsym
