#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "kdvsym/expr.hpp"

namespace kdvsym {

enum class Format { Text, Latex };

/// Canonical expanded rendering. Text output re-parses to an equal Expr.
std::string print(const Expr& e, Format format = Format::Text);
std::string print_atom(const Atom& a, Format format = Format::Text);

/// Groups terms by the monomial they carry in functions of dependent variables
/// only (A(u), B'(u), ...), printing each coefficient in parentheses, so a
/// determining equation reads like "(alpha*u+beta)*A'(u)+(xi0_t-3*xi1_x)*A(u)".
std::string print_collected(const Expr& e, Format format = Format::Text);

/// LaTeX spelling of an identifier: lbd1 -> \lambda_1, xi0 -> \xi^0, C2 -> C_2.
std::string latex_name(std::string_view identifier);

/// True for atoms the collected printer groups on.
bool is_structure_function(const Atom& a);

}  // namespace kdvsym
