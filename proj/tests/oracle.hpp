#pragma once

// Independent reference for the KdV invariance condition. It never touches the
// jet module: u and its x-derivatives are plain symbols p0..p9, the field is
// written in characteristic form Q = eta - xi0*F - xi1*p1, and the condition
// is D_t Q - F'[Q] = 0 with D_t acting through the equation itself.

#include <string>
#include <vector>

#include "kdvsym/calculus.hpp"
#include "kdvsym/context.hpp"
#include "kdvsym/jet.hpp"
#include "kdvsym/parse.hpp"
#include "kdvsym/vector_field.hpp"

namespace oracle {

using kdvsym::Expr;

inline constexpr int kJets = 10;

inline std::string p(int k) { return "p" + std::to_string(k); }

inline kdvsym::Context context() {
  kdvsym::Context c;
  c.add_independent("t");
  c.add_independent("x");
  for (int k = 0; k < kJets; ++k) c.add_parameter(p(k));
  return c;
}

/// Total x-derivative on functions of t, x, p0..p9.
inline Expr dx(const Expr& e) {
  Expr out = kdvsym::differentiate(e, "x");
  for (int k = 0; k + 1 < kJets; ++k) {
    out += Expr::symbol(p(k + 1)) * kdvsym::differentiate(e, p(k));
  }
  return out;
}

/// KdV right-hand side u_xxx + 2 u u_x.
inline Expr kdv_rhs() { return Expr::symbol(p(3)) + Expr(2) * Expr::symbol(p(0)) * Expr::symbol(p(1)); }

/// Replaces u by p0 in a field coefficient given as a function of t, x, u.
inline Expr lower(const Expr& coeff) {
  return kdvsym::map_atoms(coeff, [](const kdvsym::Atom& a) -> std::optional<Expr> {
    if (a->kind == kdvsym::AtomKind::Jet && a->name == "u" && a->jet == kdvsym::JetIndex{}) {
      return Expr::symbol(p(0));
    }
    return std::nullopt;
  });
}

/// D_t Q - F'[Q] for the KdV equation; zero exactly for symmetries.
inline Expr kdv_condition(const Expr& xi0, const Expr& xi1, const Expr& eta) {
  Expr F = kdv_rhs();
  Expr Q = lower(eta) - lower(xi0) * F - lower(xi1) * Expr::symbol(p(1));
  std::vector<Expr> dF{F};
  for (int k = 1; k < kJets; ++k) dF.push_back(dx(dF.back()));
  Expr Dt = kdvsym::differentiate(Q, "t");
  for (int k = 0; k < kJets; ++k) Dt += dF[k] * kdvsym::differentiate(Q, p(k));
  std::vector<Expr> dQ{Q};
  for (int k = 1; k <= 3; ++k) dQ.push_back(dx(dQ.back()));
  Expr lin;
  for (int k = 0; k <= 3; ++k) lin += kdvsym::differentiate(F, p(k)) * dQ[k];
  return Dt - lin;
}

inline Expr kdv_condition(const kdvsym::VectorField& X) {
  return kdv_condition(X.coeff("t"), X.coeff("x"), X.coeff("u"));
}

/// Maps jet coordinates u, u_x, u_xx, ... of a library residual to p0, p1, ...
inline Expr to_symbols(const Expr& e) {
  return kdvsym::map_atoms(e, [](const kdvsym::Atom& a) -> std::optional<Expr> {
    if (a->kind == kdvsym::AtomKind::Jet && a->name == "u" && a->jet.t == 0) return Expr::symbol(p(a->jet.x));
    return std::nullopt;
  });
}

/// The four KdV fields and their one-coefficient perturbations.
struct Field {
  std::string name;
  std::string text;
};

inline std::vector<Field> kdv_fields() {
  return {{"time translation", "d/dt"},
          {"space translation", "d/dx"},
          {"Galilean boost", "-2*t*d/dx + d/du"},
          {"scaling", "x*d/dx + 3*t*d/dt - 2*u*d/du"}};
}

/// Every field obtained by adding +1 or -1 to one rational coefficient.
inline std::vector<Field> perturbations(const Field& f) {
  std::vector<Field> out;
  // terms written as "<rational>*<monomial>*d/d<var>"
  std::vector<std::pair<int, std::string>> terms;
  if (f.text == "d/dt") terms = {{1, "d/dt"}};
  if (f.text == "d/dx") terms = {{1, "d/dx"}};
  if (f.text == "-2*t*d/dx + d/du") terms = {{-2, "t*d/dx"}, {1, "d/du"}};
  if (f.text == "x*d/dx + 3*t*d/dt - 2*u*d/du") terms = {{1, "x*d/dx"}, {3, "t*d/dt"}, {-2, "u*d/du"}};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (int delta : {1, -1}) {
      std::string text;
      for (std::size_t j = 0; j < terms.size(); ++j) {
        int c = terms[j].first + (i == j ? delta : 0);
        text += (j ? " + " : "") + std::string("(") + std::to_string(c) + ")*" + terms[j].second;
      }
      out.push_back({f.name + (delta > 0 ? " +1 on term " : " -1 on term ") + std::to_string(i + 1), text});
    }
  }
  return out;
}

}  // namespace oracle
