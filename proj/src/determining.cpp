#include "kdvsym/determining.hpp"

#include <algorithm>
#include <map>

#include "kdvsym/calculus.hpp"
#include "kdvsym/print.hpp"

namespace kdvsym {

bool Ansatz::is_unknown(const Atom& a) const {
  if (a->kind != AtomKind::Function) return false;
  for (const auto& u : unknowns) {
    if (u->name == a->name && u->deps == a->deps) return true;
  }
  return false;
}

std::string to_string(Provenance p) { return p == Provenance::Paper ? "paper" : "generated"; }

std::string to_string(AssumptionKind k) {
  switch (k) {
    case AssumptionKind::FunctionIsConstant:
      return "function-is-constant";
    case AssumptionKind::FunctionHasForm:
      return "function-has-form";
    case AssumptionKind::ParameterNonzero:
      return "parameter-nonzero";
  }
  return "";
}

Expr simplify_equation(const Expr& e, const Context& ctx) {
  const Poly& p = e.num();
  if (p.is_zero()) return Expr();
  std::map<Atom, int, AtomLess> mins;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::map<Atom, int, AtomLess> here;
    for (const auto& [a, k] : t.mono.factors) {
      if (!is_exp(a)) here[a] = k;
    }
    if (first) {
      mins = here;
      first = false;
      continue;
    }
    for (auto& [a, k] : mins) {
      auto it = here.find(a);
      k = std::min(k, it == here.end() ? 0 : it->second);
    }
    for (const auto& [a, k] : here) {
      if (!mins.count(a)) mins[a] = std::min(k, 0);
    }
  }
  Monomial shift;
  for (const auto& [a, k] : mins) {
    if (k == 0) continue;
    if (ctx.is_nonzero(a)) {
      shift.factors.emplace_back(a, -k);
    } else if (k < 0) {
      shift.factors.emplace_back(a, -k);
    }
  }
  Expr r(Poly(p).times(shift));
  // a common exponential factor is nonzero as well
  bool all_exp = std::all_of(p.terms().begin(), p.terms().end(),
                             [](const Term& t) { return t.mono.exp_factor() != nullptr; });
  if (all_exp) {
    const Atom& ex = *p.terms().front().mono.exp_factor();
    r = r * make_exp(-Expr(ex->arg));
  }
  const Poly& q = r.num();
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& t : q.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den().get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(q.terms().front().coef) < 0) scale = -scale;
  return Expr(q.scaled(scale));
}

std::vector<Expr> simplify_equations(const std::vector<Expr>& eqs, const Context& ctx) {
  std::vector<Expr> out;
  for (const auto& e : eqs) {
    Expr s = simplify_equation(e, ctx);
    if (s.is_zero()) continue;
    if (std::find(out.begin(), out.end(), s) != out.end()) continue;
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) {
    int c = compare(a.num().terms().front().mono, b.num().terms().front().mono);
    if (c != 0) return c > 0;
    return compare(a, b) < 0;
  });
  return out;
}

std::string format_det_system(const DetSystem& sys) {
  std::string s = "[detsys " + sys.name + "]\n";
  for (const auto& var : {"t", "x", "u", "v"}) {
    auto it = sys.ansatz.field.coeffs.find(var);
    if (it == sys.ansatz.field.coeffs.end()) continue;
    s += std::string("coefficient of d/d") + var + ": " + print(it->second) + "\n";
  }
  if (!sys.ansatz.unknowns.empty()) {
    s += "unknowns:";
    for (const auto& u : sys.ansatz.unknowns) {
      s += " " + u->name + "(";
      for (std::size_t i = 0; i < u->deps.size(); ++i) s += (i ? "," : "") + u->deps[i];
      s += ")";
    }
    s += "\n";
  }
  if (!sys.ansatz.constants.empty()) {
    s += "constants:";
    for (const auto& c : sys.ansatz.constants) s += " " + c;
    s += "\n";
  }
  for (const auto& a : sys.assumptions) s += "assume: " + a.text + "\n";
  for (const auto& eq : sys.equations) {
    s += print_collected(eq.lhs) + " = 0";
    if (!eq.anchor.empty()) s += "  [" + eq.anchor + "]";
    s += "\n";
  }
  for (const auto& n : sys.notes) s += "note: " + n + "\n";
  return s;
}

}  // namespace kdvsym
