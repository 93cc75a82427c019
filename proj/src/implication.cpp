#include <algorithm>
#include <map>

#include "kdvsym/calculus.hpp"
#include "kdvsym/detsys.hpp"
#include "kdvsym/print.hpp"

namespace kdvsym {

namespace {

bool is_unknown_function(const Atom& a) { return is_function(a) && !is_structure_function(a); }

/// True if b is a derivative instance of the same function as a, of order >= a's.
bool covers(const Atom& a, const Atom& b) {
  if (!is_function(b) || b->name != a->name || b->deps != a->deps) return false;
  for (std::size_t i = 0; i < a->index.size(); ++i) {
    if (b->index[i] < a->index[i]) return false;
  }
  return true;
}

using Solved = SolvedForm;

std::optional<Solved> solve_for_unknown(const Expr& e) {
  std::optional<Solved> best;
  for (const auto& a : sorted_atoms(e, false)) {
    if (!is_unknown_function(a)) continue;
    if (degree_in(e, a) != 1) continue;
    auto c = coefficient(e, a, 1);
    if (!c || !c->constant_value()) continue;
    auto rest = coefficient(e, a, 0);
    if (!rest) continue;
    bool clean = true;
    for (const auto& b : atoms_of(*rest, true)) {
      if (covers(a, b)) clean = false;
    }
    for (const auto& b : atoms_of(e, true)) {
      // the unknown may not hide inside exp or ln arguments
      if ((is_exp(b) || is_ln(b)) && contains_atom(Expr(b->arg), a)) clean = false;
    }
    if (!clean) continue;
    bool better = !best || derivative_order(a) < derivative_order(best->target) ||
                  (derivative_order(a) == derivative_order(best->target) && compare(a, best->target) < 0);
    if (better) best = Solved{a, -(*rest) / Expr(*c->constant_value())};
  }
  return best;
}

using Row = ConsequenceSpan::Row;

Row to_row(const Poly& p) {
  Row r;
  for (const auto& t : p.terms()) r.emplace(t.mono, t.coef);
  return r;
}

void axpy(Row& row, const Row& pivot_row, const Rational& f) {
  for (const auto& [m, v] : pivot_row) {
    auto it = row.find(m);
    if (it == row.end()) {
      row.emplace(m, -f * v);
    } else {
      it->second -= f * v;
      if (sgn(it->second) == 0) row.erase(it);
    }
  }
}

}  // namespace

ConsequenceSpan::ConsequenceSpan(const std::vector<Expr>& sources, const Context& ctx, int max_order)
    : ctx_(ctx) {
  std::vector<Expr> srcs;
  for (const auto& s : sources) {
    Expr e = simplify_equation(s, ctx);
    if (!e.is_zero()) srcs.push_back(e);
  }
  for (;;) {
    std::optional<std::pair<std::size_t, Solved>> pick;
    for (std::size_t i = 0; i < srcs.size(); ++i) {
      auto s = solve_for_unknown(srcs[i]);
      if (!s) continue;
      bool better = !pick || derivative_order(s->target) < derivative_order(pick->second.target);
      if (better) pick = std::make_pair(i, *s);
    }
    if (!pick) break;
    const Solved& s = pick->second;
    solved_.push_back(s);
    text_.push_back(print_atom(s.target) + " -> " + print(s.replacement));
    srcs.erase(srcs.begin() + static_cast<long>(pick->first));
    for (auto& e : srcs) e = simplify_equation(substitute(e, s.target, s.replacement), ctx);
    // the solved function does not vary with the other variables, so neither may its value
    for (const std::string v : {"t", "x", "u", "v"}) {
      if (std::find(s.target->deps.begin(), s.target->deps.end(), v) != s.target->deps.end()) continue;
      Expr d = simplify_equation(differentiate(s.replacement, v), ctx);
      if (!d.is_zero()) srcs.push_back(d);
    }
    srcs.erase(std::remove_if(srcs.begin(), srcs.end(), [](const Expr& e) { return e.is_zero(); }),
               srcs.end());
  }
  std::vector<std::string> vars;
  for (const std::string v : {"t", "x", "u", "v"}) {
    if (std::any_of(srcs.begin(), srcs.end(), [&](const Expr& e) { return depends_on(e, v); })) {
      vars.push_back(v);
    }
  }
  for (const auto& s : srcs) {
    // derivatives of s by every multi-index over vars with total order <= max_order
    std::vector<Expr> layer{s};
    add(s);
    for (int k = 1; k <= max_order; ++k) {
      std::vector<Expr> next;
      for (std::size_t i = 0; i < layer.size(); ++i) {
        for (std::size_t j = 0; j < vars.size(); ++j) {
          Expr d = differentiate(layer[i], vars[j]);
          if (d.is_zero()) continue;
          next.push_back(d);
        }
      }
      // the same mixed derivative shows up once per ordering; keep one copy
      std::vector<Expr> unique;
      for (auto& d : next) {
        if (std::find(unique.begin(), unique.end(), d) == unique.end()) unique.push_back(std::move(d));
      }
      for (const auto& d : unique) add(d);
      layer = std::move(unique);
    }
  }
}

Implication ConsequenceSpan::test(const Expr& target) const {
  Implication r;
  r.solved = text_;
  Expr t = simplify_equation(target, ctx_);
  for (const auto& s : solved_) t = simplify_equation(substitute(t, s.target, s.replacement), ctx_);
  Row row = to_row(t.num());
  reduce(row);
  PolyAccumulator acc;
  for (const auto& [m, v] : row) acc.add(m, v);
  r.remainder = Expr(acc.take());
  r.implied = r.remainder.is_zero();
  return r;
}

void ConsequenceSpan::reduce(Row& row) const {
  auto it = row.begin();
  while (it != row.end()) {
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    Monomial key = it->first;
    const Row& pr = rows_[p->second];
    Rational f = it->second / pr.begin()->second;
    axpy(row, pr, f);
    it = row.upper_bound(key);
  }
}

void ConsequenceSpan::add(const Expr& e) {
  Row row = to_row(e.num());
  reduce(row);
  if (row.empty()) return;
  pivots_.emplace(row.begin()->first, rows_.size());
  rows_.push_back(std::move(row));
}

Implication implies(const std::vector<Expr>& sources, const Expr& target, const Context& ctx, int max_order) {
  ConsequenceSpan span(sources, ctx, max_order);
  return span.test(target);
}

}  // namespace kdvsym
