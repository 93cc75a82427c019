#include "kdvsym/calculus.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace kdvsym {

namespace {

using Cache = std::unordered_map<Atom, Expr, AtomHash, AtomEq>;

Expr derive_impl(const Expr& e, const AtomDerivative& d, Cache& cache);

const Expr& atom_derivative(const Atom& a, const AtomDerivative& d, Cache& cache) {
  auto it = cache.find(a);
  if (it != cache.end()) return it->second;
  Expr da;
  if (a->kind == AtomKind::Ln) {
    Expr arg(a->arg);
    Expr darg = derive_impl(arg, d, cache);
    da = darg.is_zero() ? Expr() : darg / arg;
  } else if (a->kind == AtomKind::Exp) {
    da = derive_impl(Expr(a->arg), d, cache);  // factor exp(arg) is supplied by the caller
  } else {
    da = d(a);
  }
  return cache.emplace(a, std::move(da)).first->second;
}

Expr derive_poly(const Poly& p, const AtomDerivative& d, Cache& cache) {
  ExprAccumulator acc;
  for (const auto& t : p.terms()) {
    for (const auto& [a, k] : t.mono.factors) {
      const Expr& da = atom_derivative(a, d, cache);
      if (da.is_zero()) continue;
      Monomial rest;
      Rational scale = t.coef;
      if (a->kind == AtomKind::Exp) {
        rest = t.mono;
      } else {
        rest = t.mono * atom_power(a, -1);
        scale *= k;
      }
      if (da.is_polynomial()) {
        acc.add_product(da.num(), rest, scale);
      } else {
        acc.add(da * Expr(Poly::monomial(rest, scale)));
      }
    }
  }
  return acc.take();
}

Expr derive_impl(const Expr& e, const AtomDerivative& d, Cache& cache) {
  if (e.is_zero()) return Expr();
  Expr dnum = derive_poly(e.num(), d, cache);
  if (e.is_polynomial()) return dnum;
  Expr den_inv = Expr::from_parts(Poly(Rational(1)), e.den());
  ExprAccumulator log_derivative;
  for (const auto& [q, k] : e.den()) {
    Expr dq = derive_poly(q, d, cache);
    if (dq.is_zero()) continue;
    log_derivative.add(dq / Expr(q), k);
  }
  Expr ld = log_derivative.take();
  Expr num(e.num());
  return (dnum - num * ld) * den_inv;
}

Expr rebuild_poly(const Poly& p, const std::unordered_map<Atom, std::optional<Expr>, AtomHash, AtomEq>& repl) {
  ExprAccumulator acc;
  for (const auto& t : p.terms()) {
    Monomial kept;
    Expr replaced(1);
    bool any = false;
    for (const auto& [a, k] : t.mono.factors) {
      const auto& r = repl.at(a);
      if (r) {
        replaced = replaced * r->pow(k);
        any = true;
      } else {
        kept = kept * atom_power(a, k);
      }
    }
    if (!any) {
      acc.add_term(kept, t.coef);
    } else if (replaced.is_polynomial()) {
      acc.add_product(replaced.num(), kept, t.coef);
    } else {
      acc.add(replaced * Expr(Poly::monomial(kept, t.coef)));
    }
  }
  return acc.take();
}

void collect(const Poly& p, AtomSet& out, bool nested);

void collect_expr(const ExprRep& r, AtomSet& out, bool nested) {
  collect(r.num, out, nested);
  for (const auto& [q, k] : r.den) collect(q, out, nested);
}

void collect(const Poly& p, AtomSet& out, bool nested) {
  for (const auto& t : p.terms()) {
    for (const auto& [a, k] : t.mono.factors) {
      if (out.insert(a).second && nested && a->arg) collect_expr(*a->arg, out, nested);
    }
  }
}

}  // namespace

Expr derive(const Expr& e, const AtomDerivative& d) {
  Cache cache;
  return derive_impl(e, d, cache);
}

Expr differentiate(const Expr& e, std::string_view var, int times) {
  AtomDerivative d = [var](const Atom& a) -> Expr {
    switch (a->kind) {
      case AtomKind::Symbol:
        return a->name == var ? Expr(1) : Expr();
      case AtomKind::Jet:
        return (a->jet.order() == 0 && a->name == var) ? Expr(1) : Expr();
      case AtomKind::Function: {
        auto pos = dep_position(a, var);
        if (!pos) return Expr();
        std::vector<int> idx = a->index;
        ++idx[*pos];
        return Expr::atom(with_index(a, std::move(idx)));
      }
      default:
        return Expr();
    }
  };
  Expr r = e;
  for (int i = 0; i < times && !r.is_zero(); ++i) r = derive(r, d);
  return r;
}

Expr differentiate_atom(const Expr& e, const Atom& target) {
  return derive(e, [&target](const Atom& a) { return atom_equal(a, target) ? Expr(1) : Expr(); });
}

Expr map_atoms(const Expr& e, const AtomMap& f) {
  std::unordered_map<Atom, std::optional<Expr>, AtomHash, AtomEq> repl;
  bool changed = false;
  auto visit = [&](const Poly& p) {
    for (const auto& t : p.terms()) {
      for (const auto& [a, k] : t.mono.factors) {
        if (repl.count(a)) continue;
        std::optional<Expr> r = f(a);
        if (!r && a->arg) {
          Expr arg(a->arg);
          Expr mapped = map_atoms(arg, f);
          if (mapped.rep() != arg.rep()) r = a->kind == AtomKind::Exp ? make_exp(mapped) : make_ln(mapped);
        }
        if (r) changed = true;
        repl.emplace(a, std::move(r));
      }
    }
  };
  visit(e.num());
  for (const auto& [q, k] : e.den()) visit(q);
  if (!changed) return e;
  Expr num = rebuild_poly(e.num(), repl);
  if (e.is_polynomial()) return num;
  Expr den(1);
  for (const auto& [q, k] : e.den()) den = den * rebuild_poly(q, repl).pow(k);
  return num / den;
}

Expr substitute(const Expr& e, const Expr& target, const Expr& replacement) {
  auto a = target.as_atom();
  if (!a) throw std::invalid_argument("substitution target is not an atom");
  return substitute(e, *a, replacement);
}

Expr substitute(const Expr& e, const Atom& target, const Expr& replacement) {
  switch (target->kind) {
    case AtomKind::Symbol:
    case AtomKind::Jet: {
      Expr r = map_atoms(e, [&](const Atom& a) -> std::optional<Expr> {
        if (atom_equal(a, target)) return replacement;
        return std::nullopt;
      });
      bool variable = target->kind == AtomKind::Symbol || target->jet.order() == 0;
      if (variable && !(replacement == Expr::atom(target))) {
        for (const auto& a : atoms_of(r, true)) {
          if (a->kind == AtomKind::Function && dep_position(a, target->name)) {
            throw std::invalid_argument("cannot substitute " + target->name +
                                        " inside a function depending on it (" + a->name + ")");
          }
        }
      }
      return r;
    }
    case AtomKind::Function:
      return map_atoms(e, [&](const Atom& a) -> std::optional<Expr> {
        if (a->kind != AtomKind::Function || a->name != target->name || a->deps != target->deps) {
          return std::nullopt;
        }
        for (std::size_t i = 0; i < a->index.size(); ++i) {
          if (a->index[i] < target->index[i]) return std::nullopt;
        }
        Expr r = replacement;
        for (std::size_t i = 0; i < a->index.size(); ++i) {
          r = differentiate(r, a->deps[i], a->index[i] - target->index[i]);
        }
        return r;
      });
    default:
      throw std::invalid_argument("substitution target must be a symbol, jet coordinate or function");
  }
}

AtomSet atoms_of(const Expr& e, bool nested) {
  AtomSet out;
  collect_expr(*e.rep(), out, nested);
  return out;
}

std::vector<Atom> sorted_atoms(const Expr& e, bool nested) {
  AtomSet s = atoms_of(e, nested);
  std::vector<Atom> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), AtomLess());
  return v;
}

bool depends_on(const Expr& e, std::string_view var) {
  for (const auto& a : atoms_of(e)) {
    if (atom_depends_on(a, var)) return true;
  }
  return false;
}

bool contains_atom(const Expr& e, const Atom& a) { return atoms_of(e, true).count(a) > 0; }

int degree_in(const Expr& e, const Atom& a) {
  int deg = 0;
  for (const auto& t : e.num().terms()) deg = std::max(deg, t.mono.exponent_of(a));
  return deg;
}

std::optional<Expr> coefficient(const Expr& e, const Atom& a, int k) {
  for (const auto& [q, m] : e.den()) {
    for (const auto& t : q.terms()) {
      for (const auto& [b, j] : t.mono.factors) {
        if (atom_equal(a, b) || (b->arg && contains_atom(Expr(b->arg), a))) return std::nullopt;
      }
    }
  }
  PolyAccumulator acc;
  for (const auto& t : e.num().terms()) {
    for (const auto& [b, j] : t.mono.factors) {
      if (b->arg && contains_atom(Expr(b->arg), a)) return std::nullopt;
    }
    if (t.mono.exponent_of(a) != k) continue;
    acc.add(k == 0 ? t.mono : t.mono * atom_power(a, -k), t.coef);
  }
  Expr c(acc.take());
  if (c.is_zero()) return Expr();
  if (e.is_polynomial()) return c;
  return c * Expr::from_parts(Poly(Rational(1)), e.den());
}

}  // namespace kdvsym
