#include "kdvsym/symmetry.hpp"

#include <algorithm>
#include <regex>

#include "kdvsym/calculus.hpp"
#include "kdvsym/parse.hpp"
#include "kdvsym/print.hpp"

namespace kdvsym {

namespace {

const std::vector<std::string>& base_order() {
  static const std::vector<std::string> order{"t", "x", "u", "v"};
  return order;
}

std::string marker_name(const std::string& var) { return "kdvsymDD" + var; }

}  // namespace

Expr VectorField::coeff(const std::string& var) const {
  auto it = coeffs.find(var);
  return it == coeffs.end() ? Expr() : it->second;
}

std::vector<std::string> VectorField::dependents() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : coeffs) {
    if (k != "t" && k != "x") out.push_back(k);
  }
  return out;
}

VectorField VectorField::scaled(const Rational& c) const {
  VectorField r;
  for (const auto& [k, v] : coeffs) r.coeffs[k] = v * Expr(c);
  return r;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r = a;
  for (const auto& [k, v] : b.coeffs) r.coeffs[k] = r.coeff(k) + v;
  return r;
}

VectorField parse_vector_field(std::string_view text, const Context& ctx) {
  std::string s(text);
  static const std::regex prefix(R"(^\s*X\s*=)");
  std::size_t shift = 0;
  std::smatch pm;
  if (std::regex_search(s, pm, prefix)) {
    shift = pm.length(0);
    s = s.substr(shift);
  }
  static const std::regex op(R"(d\s*/\s*d([a-z]))");
  Context c = ctx;
  std::string rewritten;
  std::vector<std::string> seen;
  std::size_t last = 0;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), op); it != std::sregex_iterator(); ++it) {
    std::string var = (*it)[1].str();
    if (!ctx.is_variable(var)) {
      throw ParseError("d/d" + var + " does not name a variable", shift + it->position(0));
    }
    rewritten += s.substr(last, it->position(0) - last);
    // keep the text length so error positions still point into the original
    std::string m = marker_name(var);
    rewritten += m;
    last = it->position(0) + it->length(0);
    if (std::find(seen.begin(), seen.end(), var) == seen.end()) {
      seen.push_back(var);
      if (!c.has(m)) c.add_parameter(m);
    }
  }
  rewritten += s.substr(last);
  Expr e;
  try {
    e = parse(rewritten, c);
  } catch (const ParseError& err) {
    throw ParseError(err.message(), shift + std::min(err.position(), s.size()));
  }
  VectorField X;
  Expr rest = e;
  for (const auto& var : seen) {
    Atom m = make_symbol(marker_name(var));
    if (degree_in(e, m) > 1) throw ParseError("d/d" + var + " appears non-linearly", shift);
    auto k = coefficient(rest, m, 1);
    if (!k) throw ParseError("d/d" + var + " appears in a denominator", shift);
    if (!k->is_zero()) X.set(var, *k);
    rest = *coefficient(rest, m, 0);
  }
  if (!rest.is_zero()) throw ParseError("term without a d/d operator: " + print(rest), shift);
  for (const auto& [var, coef] : X.coeffs) {
    for (const auto& a : atoms_of(coef, true)) {
      if (a->kind == AtomKind::Symbol && a->name.rfind("kdvsymDD", 0) == 0) {
        throw ParseError("operators d/d" + a->name.substr(8) + " multiply each other", shift);
      }
      if (a->kind == AtomKind::Jet && a->jet.order() > 0) {
        throw ParseError("operator coefficients may not contain derivatives such as " + print_atom(a), shift);
      }
    }
  }
  return X;
}

std::string format_vector_field(const VectorField& X) {
  std::string s;
  for (const auto& var : base_order()) {
    Expr c = X.coeff(var);
    if (c.is_zero()) continue;
    std::string body = print(c);
    bool simple = c.num().size() == 1 && c.is_polynomial();
    std::string term;
    if (c == Expr(1)) {
      term = "d/d" + var;
    } else if (c == Expr(-1)) {
      term = "-d/d" + var;
    } else {
      term = (simple ? body : "(" + body + ")") + "*d/d" + var;
    }
    if (!s.empty() && term[0] != '-') s += "+";
    s += term;
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------- Prolongation

Prolongation::Prolongation(VectorField X, JetSpace space) : X_(std::move(X)), space_(std::move(space)) {}

const Expr& Prolongation::eta(const std::string& w, const JetIndex& J) {
  auto key = std::make_pair(w, std::make_pair(J.t, J.x));
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Expr result;
  if (J.order() == 0) {
    result = X_.coeff(w);
  } else {
    char dir = J.x > 0 ? 'x' : 't';
    JetIndex P = J.shifted(dir, -1);
    Expr parent = eta(w, P);
    ExprAccumulator acc;
    acc.add(total_derivative(parent, dir, space_));
    for (char k : {'t', 'x'}) {
      Expr xi = X_.coeff(std::string(1, k));
      if (xi.is_zero()) continue;
      Expr dxi = total_derivative(xi, dir, space_);
      if (dxi.is_zero()) continue;
      JetIndex Pk = P.shifted(k);
      if (Pk.order() > space_.max_for(w)) throw JetError("prolongation exceeds jet order");
      acc.add(Expr::atom(make_jet(w, Pk)) * dxi, -1);
    }
    result = acc.take();
  }
  return memo_.emplace(key, std::move(result)).first->second;
}

Expr Prolongation::apply(const Expr& e) {
  auto base_coeff = [&](const std::string& var) -> Expr {
    if (var == "t" || var == "x") return X_.coeff(var);
    return eta(var, JetIndex{});
  };
  return derive(e, [&](const Atom& a) -> Expr {
    switch (a->kind) {
      case AtomKind::Symbol:
        return (a->name == "t" || a->name == "x") ? X_.coeff(a->name) : Expr();
      case AtomKind::Jet:
        return eta(a->name, a->jet);
      case AtomKind::Function: {
        ExprAccumulator acc;
        for (std::size_t i = 0; i < a->deps.size(); ++i) {
          Expr c = base_coeff(a->deps[i]);
          if (c.is_zero()) continue;
          std::vector<int> idx = a->index;
          ++idx[i];
          acc.add(Expr::atom(with_index(a, std::move(idx))) * c);
        }
        return acc.take();
      }
      default:
        return Expr();
    }
  });
}

std::vector<std::pair<Atom, Expr>> prolong(const VectorField& X, const JetSpace& space, int order) {
  Prolongation p(X, space);
  std::vector<std::pair<Atom, Expr>> out;
  for (const auto& [w, max] : space.max_order) {
    if (order > max - 1 && order > 0) throw JetError("prolongation order exceeds jet space");
    for (int k = 0; k <= order; ++k) {
      for (int t = 0; t <= k; ++t) {
        JetIndex J{t, k - t};
        out.emplace_back(make_jet(w, J), p.eta(w, J));
      }
    }
  }
  return out;
}

std::vector<Expr> invariance_residual(const VectorField& X, const SolutionManifold& m) {
  for (const auto& w : X.dependents()) {
    if (!m.system().has_dependent(w)) {
      throw JetError("operator acts on " + w + " which the system does not contain");
    }
  }
  Prolongation p(X, m.space());
  std::vector<Expr> out;
  for (const auto& r : m.rules()) {
    Expr applied = p.eta(r.head->name, r.head->jet) - p.apply(r.rhs);
    out.push_back(m.reduce(applied));
  }
  return out;
}

std::vector<SplitTerm> split_residual(const Expr& residual) {
  if (residual.is_zero()) return {};
  std::vector<Atom> atoms = sorted_atoms(residual, true);
  std::vector<std::string> dependents;
  for (const auto& a : atoms) {
    if (a->kind == AtomKind::Jet && std::find(dependents.begin(), dependents.end(), a->name) == dependents.end()) {
      dependents.push_back(a->name);
    }
  }
  // u or v joins the basis when no non-jet atom depends on it
  std::vector<std::string> split_vars;
  for (const auto& w : dependents) {
    bool free = true;
    for (const auto& a : atoms) {
      if (a->kind == AtomKind::Jet) continue;
      if (atom_depends_on(a, w)) free = false;
    }
    if (free) split_vars.push_back(w);
  }
  auto in_basis = [&](const Atom& a) {
    if (a->kind != AtomKind::Jet) return false;
    if (a->jet.order() > 0) return true;
    return std::find(split_vars.begin(), split_vars.end(), a->name) != split_vars.end();
  };
  for (const auto& [q, k] : residual.den()) {
    for (const auto& t : q.terms()) {
      for (const auto& [a, e] : t.mono.factors) {
        if (in_basis(a)) throw std::invalid_argument("residual is not polynomial in " + print_atom(a));
      }
    }
  }
  std::vector<std::pair<Monomial, PolyAccumulator>> groups;
  std::unordered_map<Monomial, std::size_t, MonomialHash> where;
  for (const auto& t : residual.num().terms()) {
    Monomial basis;
    Monomial rest;
    for (const auto& [a, e] : t.mono.factors) {
      if (in_basis(a)) {
        if (e < 0) throw std::invalid_argument("residual is not polynomial in " + print_atom(a));
        basis.factors.emplace_back(a, e);
      } else {
        rest.factors.emplace_back(a, e);
      }
    }
    auto [it, inserted] = where.try_emplace(basis, groups.size());
    if (inserted) groups.emplace_back(basis, PolyAccumulator());
    groups[it->second].second.add(rest, t.coef);
  }
  // the denominator is free of the basis and stays with every coefficient
  Expr inverse_den = Expr::from_parts(Poly::monomial(Monomial{}), residual.den());
  std::vector<SplitTerm> out;
  for (auto& [basis, acc] : groups) {
    Poly c = acc.take();
    if (c.is_zero()) continue;
    out.push_back(SplitTerm{basis, Expr(std::move(c)) * inverse_den});
  }
  std::sort(out.begin(), out.end(),
            [](const SplitTerm& a, const SplitTerm& b) { return compare(a.basis, b.basis) > 0; });
  return out;
}

}  // namespace kdvsym
