#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "kdvsym/expr.hpp"

namespace kdvsym {

/// Derivative of each atom under some derivation; exp and ln atoms are
/// handled by the chain rule and never reach the callback.
using AtomDerivative = std::function<Expr(const Atom&)>;

/// Applies the derivation defined by d on atoms to e (sum, product and
/// quotient rules, chain rule through exp and ln).
Expr derive(const Expr& e, const AtomDerivative& d);

/// Partial derivative with respect to an independent variable, dependent
/// variable or parameter. Function atoms increment their derivative index when
/// var is one of their dependencies and vanish otherwise.
Expr differentiate(const Expr& e, std::string_view var, int times = 1);

/// Partial derivative with respect to a specific atom (for example a jet
/// coordinate or a function derivative), treating every other atom as constant.
Expr differentiate_atom(const Expr& e, const Atom& a);

using AtomMap = std::function<std::optional<Expr>(const Atom&)>;

/// Replaces atoms for which f returns a value; recurses into exp and ln
/// arguments. Returns e itself when nothing changes.
Expr map_atoms(const Expr& e, const AtomMap& f);

/// Substitutes target by replacement. For a function target f_J every derivative
/// instance f_K with K >= J becomes the corresponding partial derivative of the
/// replacement. Throws std::invalid_argument when target is not an atom, or when
/// a dependent-variable substitution would leave a function of that variable.
Expr substitute(const Expr& e, const Expr& target, const Expr& replacement);
Expr substitute(const Expr& e, const Atom& target, const Expr& replacement);

using AtomSet = std::unordered_set<Atom, AtomHash, AtomEq>;

/// Atoms occurring in e; with nested set, also those inside exp and ln arguments.
AtomSet atoms_of(const Expr& e, bool nested = false);
std::vector<Atom> sorted_atoms(const Expr& e, bool nested = false);

bool depends_on(const Expr& e, std::string_view var);
bool contains_atom(const Expr& e, const Atom& a);

/// Highest exponent of a in the numerator (denominators must be free of a).
int degree_in(const Expr& e, const Atom& a);

/// Coefficient of a^k in e, viewing e as a Laurent polynomial in a whose
/// denominator factors do not involve a. Returns nullopt otherwise.
std::optional<Expr> coefficient(const Expr& e, const Atom& a, int k);

}  // namespace kdvsym
