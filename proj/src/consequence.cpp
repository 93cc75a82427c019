#include <algorithm>
#include <map>

#include "kdvsym/calculus.hpp"
#include "kdvsym/detsys.hpp"
#include "kdvsym/parse.hpp"
#include "kdvsym/print.hpp"

namespace kdvsym {

Transform Transform::diff(std::string var) {
  Transform t;
  t.kind = Kind::Differentiate;
  t.var = std::move(var);
  return t;
}

Transform Transform::subst(Atom target, Expr replacement) {
  Transform t;
  t.kind = Kind::Substitute;
  t.target = std::move(target);
  t.replacement = std::move(replacement);
  return t;
}

std::string Transform::text() const {
  if (kind == Kind::Differentiate) return "d/d" + var;
  auto with_args = [](const Atom& a) {
    std::string s = print_atom(a);
    if (!is_function(a) || derivative_order(a) != 0 || s.find('(') != std::string::npos) return s;
    s += "(";
    for (std::size_t i = 0; i < a->deps.size(); ++i) s += (i ? "," : "") + a->deps[i];
    return s + ")";
  };
  auto r = replacement.as_atom();
  if (r && is_function(*r) && (*r)->name == target->name) return with_args(target) + " -> " + with_args(*r);
  return print_atom(target) + " -> " + print(replacement);
}

Expr apply_transforms(const Expr& e, const std::vector<Transform>& ts) {
  Expr r = e;
  for (const auto& t : ts) {
    r = t.kind == Transform::Kind::Differentiate ? differentiate(r, t.var) : substitute(r, t.target, t.replacement);
  }
  return r;
}

namespace {

Expr substitutions_only(const Expr& e, const std::vector<Transform>& ts) {
  Expr r = e;
  for (const auto& t : ts) {
    if (t.kind == Transform::Kind::Substitute) r = substitute(r, t.target, t.replacement);
  }
  return r;
}

bool nonzero_monomial(const Expr& f, const Context& ctx) {
  if (!f.is_polynomial() || f.num().size() != 1) return false;
  for (const auto& [a, k] : f.num().terms().front().mono.factors) {
    if (!ctx.is_nonzero(a)) return false;
  }
  return true;
}

ConsequenceVerdict settle(ConsequenceVerdict v, const Expr& difference, const Context& ctx, std::uint64_t seed) {
  v.difference = difference;
  ZeroVerdict z = is_zero(difference, ctx, seed);
  v.status = z.status;
  if (z.status == ZeroStatus::NonZero) v.detail += (v.detail.empty() ? "" : "; ") + std::string("nonzero at a probe");
  if (z.status == ZeroStatus::Unknown) v.detail += (v.detail.empty() ? "" : "; ") + std::string("probes all vanish");
  return v;
}

using Row = std::map<Monomial, Rational, ConsequenceSpan::MonoGreater>;

Row row_of(const Poly& p) {
  Row r;
  for (const auto& t : p.terms()) r.emplace(t.mono, t.coef);
  return r;
}

}  // namespace

ConsequenceVerdict check_consequence(const std::vector<DetEquation>& sources, const std::vector<Transform>& transform,
                                     const DetEquation& target, const Context& ctx, std::uint64_t seed) {
  ConsequenceVerdict v;
  std::vector<Expr> images;
  for (const auto& s : sources) images.push_back(apply_transforms(s.lhs, transform));
  Expr goal = substitutions_only(target.lhs, transform);

  if (goal.is_zero()) {
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i].is_zero()) continue;
      v.detail = "source " + std::to_string(i + 1) + " does not vanish";
      return settle(v, images[i], ctx, seed);
    }
    v.status = ZeroStatus::Zero;
    v.factor = Expr(1);
    v.detail = "vanishes identically";
    return v;
  }

  if (images.size() == 1) {
    const Expr& img = images[0];
    if (img.is_zero()) {
      v.detail = "the transformed source vanishes but the target does not";
      return settle(v, goal, ctx, seed);
    }
    // a monomial factor maps the first term of the target onto some term of the image
    const Term& g0 = goal.num().terms().front();
    std::vector<Expr> candidates;
    for (const auto& t : img.num().terms()) {
      candidates.push_back(Expr(Poly::monomial(t.mono).scaled(t.coef)) / Expr(Poly::monomial(g0.mono).scaled(g0.coef)));
    }
    for (const auto& f : candidates) {
      Expr d = img - f * goal;
      if (!d.is_zero()) continue;
      if (!nonzero_monomial(f, ctx)) {
        v.status = ZeroStatus::Unknown;
        v.factor = f;
        v.detail = "equal up to the factor " + print(f) + ", which may vanish";
        return v;
      }
      v.status = ZeroStatus::Zero;
      v.factor = f;
      v.detail = "transformed source = (" + print(f) + ") * target";
      return v;
    }
    v.factor = candidates.front();
    return settle(v, img - candidates.front() * goal, ctx, seed);
  }

  // rational combination of several sources, by elimination on their numerators
  for (const auto& img : images) {
    if (!img.is_polynomial()) {
      v.status = ZeroStatus::Unknown;
      v.detail = "combinations need polynomial sources";
      return v;
    }
  }
  if (!goal.is_polynomial()) {
    v.status = ZeroStatus::Unknown;
    v.detail = "combinations need a polynomial target";
    return v;
  }
  struct Pivot {
    Row row;
    std::vector<Rational> combo;  // row = sum combo[i] * images[i]
  };
  std::vector<Pivot> pivots;
  auto reduce = [&](Row& row, std::vector<Rational>& combo) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& p : pivots) {
        auto it = row.find(p.row.begin()->first);
        if (it == row.end()) continue;
        Rational f = it->second / p.row.begin()->second;
        for (const auto& [m, c] : p.row) {
          Rational nv = (row.count(m) ? row[m] : Rational(0)) - f * c;
          if (sgn(nv) == 0) {
            row.erase(m);
          } else {
            row[m] = nv;
          }
        }
        for (std::size_t i = 0; i < combo.size(); ++i) combo[i] -= f * p.combo[i];
        changed = true;
      }
    }
  };
  for (std::size_t i = 0; i < images.size(); ++i) {
    Row row = row_of(images[i].num());
    std::vector<Rational> combo(images.size(), Rational(0));
    combo[i] = 1;
    reduce(row, combo);
    if (!row.empty()) pivots.push_back(Pivot{std::move(row), std::move(combo)});
  }
  Row row = row_of(goal.num());
  std::vector<Rational> combo(images.size(), Rational(0));
  reduce(row, combo);
  if (row.empty()) {
    // goal - sum combo_i images_i = 0 after reduction, so goal = -sum combo_i images_i
    std::string text;
    for (std::size_t i = 0; i < combo.size(); ++i) {
      if (sgn(combo[i]) == 0) continue;
      Rational c = -combo[i];
      text += (text.empty() ? "" : " + ") + std::string("(") + c.get_str() + ")*source " + std::to_string(i + 1);
    }
    v.status = ZeroStatus::Zero;
    v.factor = Expr(1);
    v.detail = "target = " + text;
    return v;
  }
  PolyAccumulator acc;
  for (const auto& [m, c] : row) acc.add(m, c);
  v.detail = "target is not a rational combination of the transformed sources";
  return settle(v, Expr(acc.take()), ctx, seed);
}

namespace {

bool u_part(const Atom& a) { return atom_depends_on(a, "u"); }

/// Splits a monomial into its factors that depend on u and the rest.
std::pair<Monomial, Monomial> separate(const Monomial& m) {
  Monomial in_u;
  Monomial rest;
  for (const auto& f : m.factors) (u_part(f.first) ? in_u : rest).factors.push_back(f);
  return {in_u, rest};
}

}  // namespace

DetSystem split_by_u_basis(const DetEquation& eq, const std::vector<Expr>& basis, const Context& ctx) {
  (void)ctx;
  if (basis.empty()) throw std::invalid_argument("empty splitting basis");
  if (!eq.lhs.is_polynomial()) throw std::invalid_argument("the equation has a non-monomial denominator");
  // columns: u-monomials; basis element i contributes B[i][m]
  std::vector<std::map<Monomial, Rational, ConsequenceSpan::MonoGreater>> B;
  for (const auto& b : basis) {
    if (!b.is_polynomial()) throw std::invalid_argument("basis element " + print(b) + " is not a Laurent polynomial");
    std::map<Monomial, Rational, ConsequenceSpan::MonoGreater> col;
    for (const auto& t : b.num().terms()) {
      auto [in_u, rest] = separate(t.mono);
      if (!rest.factors.empty()) {
        throw std::invalid_argument("basis element " + print(b) + " depends on more than u");
      }
      col[in_u] += t.coef;
    }
    B.push_back(std::move(col));
  }
  // right-hand side per u-monomial
  std::map<Monomial, ExprAccumulator, ConsequenceSpan::MonoGreater> L;
  for (const auto& t : eq.lhs.num().terms()) {
    auto [in_u, rest] = separate(t.mono);
    L[in_u].add_term(rest, t.coef);
  }
  std::vector<Monomial> cols;
  for (const auto& b : B) {
    for (const auto& [m, c] : b) {
      if (std::find(cols.begin(), cols.end(), m) == cols.end()) cols.push_back(m);
    }
  }
  for (const auto& [m, acc] : L) {
    if (std::find(cols.begin(), cols.end(), m) == cols.end()) {
      throw std::invalid_argument("the term in " + print(Expr(Poly::monomial(m))) + " is not covered by the basis");
    }
  }
  // one linear equation per column: sum_i B[i][m] c_i = L_m
  struct Eqn {
    std::vector<Rational> a;
    Expr rhs;
  };
  std::vector<Eqn> rows;
  for (const auto& m : cols) {
    Eqn r;
    for (const auto& b : B) {
      auto it = b.find(m);
      r.a.push_back(it == b.end() ? Rational(0) : it->second);
    }
    auto it = L.find(m);
    r.rhs = it == L.end() ? Expr() : it->second.take();
    rows.push_back(std::move(r));
  }
  const std::size_t n = basis.size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = rank;
    while (p < rows.size() && sgn(rows[p].a[c]) == 0) ++p;
    if (p == rows.size()) throw std::invalid_argument("the basis is linearly dependent");
    std::swap(rows[p], rows[rank]);
    Rational inv = 1 / rows[rank].a[c];
    for (auto& x : rows[rank].a) x *= inv;
    rows[rank].rhs = rows[rank].rhs * Expr(inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r].a[c]) == 0) continue;
      Rational f = rows[r].a[c];
      for (std::size_t k = 0; k < n; ++k) rows[r].a[k] -= f * rows[rank].a[k];
      rows[r].rhs = rows[r].rhs - Expr(f) * rows[rank].rhs;
    }
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (!rows[r].rhs.is_zero()) throw std::invalid_argument("the equation is not a combination of the basis");
  }
  DetSystem out;
  out.name = eq.anchor.empty() ? "split" : eq.anchor + " split";
  std::string names;
  for (std::size_t i = 0; i < n; ++i) {
    out.equations.push_back(DetEquation{rows[i].rhs, eq.anchor + "[" + print(basis[i]) + "]", Provenance::Generated});
    names += (i ? ", " : "") + print(basis[i]);
  }
  out.notes.push_back("assumes " + names + " are linearly independent functions of u");
  return out;
}

DetSystem specialize(const DetSystem& sys, const CaseAssumption& assumption, Context& ctx) {
  DetSystem out = sys;
  out.assumptions.push_back(assumption);
  if (assumption.kind == AssumptionKind::ParameterNonzero) {
    if (ctx.function(assumption.subject)) {
      ctx.assume_nonzero(ctx.atom_for(assumption.subject));
    } else if (ctx.has(assumption.subject)) {
      ctx.assume_nonzero(assumption.subject);
    } else {
      ctx.assume_nonzero(parse(assumption.subject, ctx).as_atom().value());
    }
  } else {
    auto target = parse(assumption.subject, ctx).as_atom();
    if (!target) throw ContextError("'" + assumption.subject + "' is not a single symbol or function");
    if (assumption.detail.is_zero() && ctx.is_nonzero(*target)) {
      throw ContextError("'" + assumption.subject + "' is assumed nonzero");
    }
    if (assumption.kind == AssumptionKind::FunctionIsConstant) {
      for (const auto& a : atoms_of(assumption.detail, true)) {
        if (!is_symbol(a) || ctx.is_variable(a->name)) {
          throw ContextError("'" + print(assumption.detail) + "' is not a constant");
        }
      }
      // a nonzero derivative cannot survive a constant value
      if (is_function(*target)) {
        Atom d = *target;
        for (std::size_t i = 0; i < d->deps.size(); ++i) {
          std::vector<int> idx = d->index;
          ++idx[i];
          if (ctx.is_nonzero(with_index(d, idx))) {
            throw ContextError("'" + assumption.subject + "' has a derivative assumed nonzero");
          }
        }
      }
    }
    for (auto& eq : out.equations) eq.lhs = substitute(eq.lhs, *target, assumption.detail);
    for (auto& [var, c] : out.ansatz.field.coeffs) c = substitute(c, *target, assumption.detail);
  }
  std::vector<DetEquation> kept;
  for (auto& eq : out.equations) {
    eq.lhs = simplify_equation(eq.lhs, ctx);
    if (!eq.lhs.is_zero()) kept.push_back(std::move(eq));
  }
  out.equations = std::move(kept);
  return out;
}

}  // namespace kdvsym
