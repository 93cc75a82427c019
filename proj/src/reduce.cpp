#include <algorithm>
#include <map>

#include "kdvsym/calculus.hpp"
#include "kdvsym/print.hpp"
#include "kdvsym/symmetry.hpp"

namespace kdvsym {

namespace {

/// The unknown derivative f_J when the simplified equation reads f_J = 0.
std::optional<Atom> single_unknown(const Expr& eq, const Ansatz& an) {
  if (!eq.is_polynomial() || eq.num().size() != 1) return std::nullopt;
  const Monomial& m = eq.num().terms().front().mono;
  if (m.factors.size() != 1 || m.factors[0].second != 1) return std::nullopt;
  const Atom& a = m.factors[0].first;
  if (!an.is_unknown(a)) return std::nullopt;
  return a;
}

std::string fresh_name(const Context& ctx, const std::string& hint) {
  if (!ctx.has(hint)) return hint;
  for (int i = 1;; ++i) {
    std::string n = hint + std::to_string(i);
    if (!ctx.has(n)) return n;
  }
}

std::pair<std::string, std::string> linear_names(const std::string& f, const std::string& var) {
  if ((f == "eta" || f == "eta1") && var == "u") return {"alpha", "beta"};
  if (f == "eta2" && var == "v") return {"C2", "gamma"};
  return {f + "a", f + "b"};
}

std::string signature(const std::string& name, const std::vector<std::string>& deps) {
  std::string s = name;
  if (deps.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < deps.size(); ++i) s += (i ? "," : "") + deps[i];
  return s + ")";
}

void replace_unknown(Ansatz& an, std::vector<Expr>& eqs, const Atom& f, const Expr& repl,
                     const std::vector<Atom>& added) {
  for (auto& [var, c] : an.field.coeffs) c = substitute(c, f, repl);
  for (auto& e : eqs) e = substitute(e, f, repl);
  auto it = std::find_if(an.unknowns.begin(), an.unknowns.end(),
                         [&](const Atom& u) { return atom_equal(u, f); });
  it = an.unknowns.erase(it);
  an.unknowns.insert(it, added.begin(), added.end());
}

/// Splits by u and v where possible, then simplifies.
std::vector<Expr> tidy(const std::vector<Expr>& eqs, const Context& ctx) {
  std::vector<Expr> parts;
  for (const auto& e : eqs) {
    if (e.is_zero()) continue;
    try {
      for (auto& t : split_residual(e)) parts.push_back(std::move(t.coefficient));
    } catch (const std::invalid_argument&) {
      parts.push_back(e);
    }
  }
  return simplify_equations(parts, ctx);
}

bool simple_monomial(const Monomial& m, const Ansatz& an, const Context& ctx) {
  int unknowns = 0;
  for (const auto& [a, k] : m.factors) {
    if (an.is_unknown(a)) {
      if (k != 1) return false;
      ++unknowns;
    } else if (!ctx.is_nonzero(a)) {
      return false;
    }
  }
  return unknowns == 1;
}

/// Eliminates, over the rationals, every monomial that is not a nonzero factor
/// times one unknown derivative from the equations and their u- and
/// v-derivatives; returns a relation of the form f_J = 0 that is not already
/// among the equations, if any.
std::optional<Expr> hidden_relation(const std::vector<Expr>& eqs, const Ansatz& an, const Context& ctx) {
  std::vector<std::string> vars;
  for (const auto& w : ctx.dependents()) {
    bool used = std::any_of(an.unknowns.begin(), an.unknowns.end(),
                            [&](const Atom& u) { return atom_depends_on(u, w); });
    if (used) vars.push_back(w);
  }
  if (vars.empty()) return std::nullopt;
  std::vector<Poly> rows;
  for (const auto& e : eqs) {
    if (!e.is_polynomial()) continue;
    rows.push_back(e.num());
    for (const auto& w : vars) {
      Expr d = differentiate(e, w);
      if (d.is_polynomial() && !d.is_zero()) rows.push_back(d.num());
    }
  }
  std::vector<Monomial> cols;
  std::unordered_map<Monomial, int, MonomialHash> where;
  for (const auto& r : rows) {
    for (const auto& t : r.terms()) {
      if (where.emplace(t.mono, 0).second) cols.push_back(t.mono);
    }
  }
  std::vector<char> simple(cols.size());
  std::vector<int> order(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    simple[i] = simple_monomial(cols[i], an, ctx);
    order[i] = static_cast<int>(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (simple[a] != simple[b]) return simple[a] < simple[b];
    return compare(cols[a], cols[b]) > 0;
  });
  for (std::size_t i = 0; i < order.size(); ++i) where[cols[order[i]]] = static_cast<int>(i);
  std::vector<std::map<int, Rational>> mat;
  for (const auto& r : rows) {
    std::map<int, Rational> row;
    for (const auto& t : r.terms()) row[where[t.mono]] = t.coef;
    mat.push_back(std::move(row));
  }
  std::vector<std::map<int, Rational>> reduced;
  for (auto& row : mat) {
    for (const auto& p : reduced) {
      int pc = p.begin()->first;
      auto it = row.find(pc);
      if (it == row.end()) continue;
      Rational f = it->second / p.begin()->second;
      for (const auto& [c, v] : p) {
        Rational nv = row[c] - f * v;
        if (sgn(nv) == 0) {
          row.erase(c);
        } else {
          row[c] = nv;
        }
      }
    }
    if (row.empty()) continue;
    // keep earlier pivots eliminated from the new row and vice versa
    int pc = row.begin()->first;
    for (auto& p : reduced) {
      auto it = p.find(pc);
      if (it == p.end()) continue;
      Rational f = it->second / row.begin()->second;
      for (const auto& [c, v] : row) {
        Rational nv = p[c] - f * v;
        if (sgn(nv) == 0) {
          p.erase(c);
        } else {
          p[c] = nv;
        }
      }
    }
    reduced.push_back(std::move(row));
  }
  for (const auto& row : reduced) {
    if (!simple[order[row.begin()->first]]) continue;
    PolyAccumulator acc;
    for (const auto& [c, v] : row) acc.add(cols[order[c]], v);
    Expr s = simplify_equation(Expr(acc.take()), ctx);
    if (single_unknown(s, an) && std::find(eqs.begin(), eqs.end(), s) == eqs.end()) return s;
  }
  return std::nullopt;
}

}  // namespace

AnsatzReduction reduce_ansatz(const std::vector<Expr>& raw, Ansatz an, Context& ctx) {
  AnsatzReduction out;
  std::vector<Expr> eqs = raw;
  for (int iter = 0; iter < 200; ++iter) {
    eqs = tidy(eqs, ctx);
    std::optional<Atom> first;
    std::optional<Atom> second;
    for (const auto& e : eqs) {
      auto a = single_unknown(e, an);
      if (!a) continue;
      int order = derivative_order(*a);
      if (order == 1 && !first) first = a;
      if (order == 2 && !second) {
        for (std::size_t i = 0; i < (*a)->deps.size(); ++i) {
          if ((*a)->index[i] == 2 && ctx.is_dependent((*a)->deps[i])) second = a;
        }
      }
    }
    if (first) {
      const Atom& d = *first;
      Atom f = function_base(d);
      std::size_t pos = std::find(d->index.begin(), d->index.end(), 1) - d->index.begin();
      std::string var = d->deps[pos];
      std::vector<std::string> deps = f->deps;
      deps.erase(deps.begin() + static_cast<long>(pos));
      std::string step = print_atom(d) + " = 0: ";
      if (deps.empty()) {
        Expr c = Expr::symbol(f->name);
        replace_unknown(an, eqs, f, c, {});
        ctx.remove(f->name);
        ctx.add_constant(f->name);
        an.constants.push_back(f->name);
        step += f->name + " is constant";
      } else {
        Atom g = make_function(f->name, deps);
        replace_unknown(an, eqs, f, Expr::atom(g), {g});
        ctx.set_function(f->name, deps);
        step += signature(f->name, deps);
      }
      out.steps.push_back(step);
      continue;
    }
    if (second) {
      const Atom& d = *second;
      Atom f = function_base(d);
      std::size_t pos = std::find(d->index.begin(), d->index.end(), 2) - d->index.begin();
      std::string var = d->deps[pos];
      std::vector<std::string> deps = f->deps;
      deps.erase(deps.begin() + static_cast<long>(pos));
      auto [hint1, hint0] = linear_names(f->name, var);
      std::string n1 = fresh_name(ctx, hint1);
      ctx.add_function(n1, deps);
      std::string n0 = fresh_name(ctx, hint0);
      ctx.add_function(n0, deps);
      Atom f1 = make_function(n1, deps);
      Atom f0 = make_function(n0, deps);
      Expr repl = Expr::atom(f1) * Expr::atom(make_jet(var)) + Expr::atom(f0);
      replace_unknown(an, eqs, f, repl, {f1, f0});
      ctx.remove(f->name);
      out.steps.push_back(print_atom(d) + " = 0: " + f->name + " = " + print(repl) + ", " +
                          signature(n1, deps) + ", " + signature(n0, deps));
      continue;
    }
    if (auto h = hidden_relation(eqs, an, ctx)) {
      out.steps.push_back(print(*h) + " = 0 follows from the equations and their derivatives");
      eqs.push_back(*h);
      continue;
    }
    break;
  }
  out.ansatz = std::move(an);
  out.equations = std::move(eqs);
  return out;
}

}  // namespace kdvsym
