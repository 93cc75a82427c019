#include "kdvsym/print.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <vector>

namespace kdvsym {

namespace {

bool is_independent_name(const std::string& n) { return n == "t" || n == "x"; }

bool prime_style(const Atom& f) { return f->deps.size() == 1 && !is_independent_name(f->deps[0]); }

std::string jet_subscript(const JetIndex& j) { return std::string(j.x, 'x') + std::string(j.t, 't'); }

std::string function_subscript(const Atom& f) {
  std::string s;
  for (std::size_t i = 0; i < f->deps.size(); ++i) {
    for (int k = 0; k < f->index[i]; ++k) s += f->deps[i];
  }
  return s;
}

std::string poly_text(const Poly& p, Format f);

std::string expr_text(const Expr& e, Format f);

std::string factor_text(const Atom& a, int e, Format f) {
  std::string base = print_atom(a, f);
  if (e == 1) return base;
  if (f == Format::Latex) {
    if (a->kind == AtomKind::Ln) base = "\\left(" + base + "\\right)";
    return base + "^{" + std::to_string(e) + "}";
  }
  return base + "^" + std::to_string(e);
}

/// Sign-free rendering of one term; negative tells whether a minus is needed.
std::string term_text(const Rational& coef, const Monomial& m, Format f, bool& negative) {
  negative = sgn(coef) < 0;
  Rational c = abs(coef);
  std::vector<std::string> up;
  std::vector<std::string> down;
  // jet coordinates go last so coefficients read "alpha*u", "B'(u)*u_x"
  std::vector<std::pair<Atom, int>> factors = m.factors;
  std::stable_partition(factors.begin(), factors.end(), [](const auto& p) { return !is_jet(p.first); });
  for (const auto& [a, e] : factors) {
    if (e > 0) {
      up.push_back(factor_text(a, e, f));
    } else {
      down.push_back(factor_text(a, -e, f));
    }
  }
  const std::string sep = f == Format::Latex ? " " : "*";
  auto join = [&](const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
  };
  mpz_class p = c.get_num();
  mpz_class q = c.get_den();
  if (f == Format::Latex) {
    if (q == 1 && down.empty()) {
      if (up.empty()) return p.get_str();
      return (p == 1 ? "" : p.get_str() + " ") + join(up);
    }
    std::vector<std::string> top = up;
    if (p != 1 || top.empty()) top.insert(top.begin(), p.get_str());
    std::vector<std::string> bottom = down;
    if (q != 1) bottom.insert(bottom.begin(), q.get_str());
    return "\\frac{" + join(top) + "}{" + join(bottom) + "}";
  }
  std::vector<std::string> top = up;
  if (p != 1 || top.empty()) top.insert(top.begin(), p.get_str());
  std::string s = join(top);
  std::vector<std::string> bottom = down;
  if (q != 1) bottom.insert(bottom.begin(), q.get_str());
  if (bottom.empty()) return s;
  if (bottom.size() == 1 && bottom[0].find('^') == std::string::npos) return s + "/" + bottom[0];
  return s + "/(" + join(bottom) + ")";
}

std::string poly_text(const Poly& p, Format f) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool neg = false;
    std::string body = term_text(t.coef, t.mono, f, neg);
    if (first) {
      s += neg ? "-" + body : body;
    } else {
      s += (neg ? (f == Format::Latex ? " - " : "-") : (f == Format::Latex ? " + " : "+")) + body;
    }
    first = false;
  }
  return s;
}

std::string expr_text(const Expr& e, Format f) {
  std::string num = poly_text(e.num(), f);
  if (e.is_polynomial()) return num;
  std::vector<std::string> dens;
  for (const auto& [q, k] : e.den()) {
    std::string qs = poly_text(q, f);
    if (f == Format::Latex) {
      qs = "\\left(" + qs + "\\right)";
      if (k != 1) qs += "^{" + std::to_string(k) + "}";
    } else {
      qs = "(" + qs + ")";
      if (k != 1) qs += "^" + std::to_string(k);
    }
    dens.push_back(qs);
  }
  if (f == Format::Latex) {
    std::string d;
    for (const auto& x : dens) d += x;
    return "\\frac{" + num + "}{" + d + "}";
  }
  std::string d;
  for (std::size_t i = 0; i < dens.size(); ++i) d += (i ? "*" : "") + dens[i];
  bool wrap = e.num().size() > 1 || num.find('/') != std::string::npos;
  return (wrap ? "(" + num + ")" : num) + "/(" + d + ")";
}

}  // namespace

std::string latex_name(std::string_view id) {
  static const std::map<std::string, std::string, std::less<>> greek{
      {"alpha", "\\alpha"}, {"beta", "\\beta"},   {"gamma", "\\gamma"}, {"delta", "\\delta"},
      {"eta", "\\eta"},     {"xi", "\\xi"},       {"mu", "\\mu"},       {"lbd", "\\lambda"},
      {"lambda", "\\lambda"}, {"nu", "\\nu"},     {"phi", "\\phi"},     {"psi", "\\psi"},
      {"sigma", "\\sigma"}, {"tau", "\\tau"},     {"theta", "\\theta"}, {"kappa", "\\kappa"},
      {"rho", "\\rho"},     {"omega", "\\omega"}, {"epsilon", "\\epsilon"}, {"zeta", "\\zeta"}};
  std::size_t split = id.size();
  while (split > 0 && std::isdigit(static_cast<unsigned char>(id[split - 1]))) --split;
  std::string_view stem = id.substr(0, split);
  std::string_view digits = id.substr(split);
  auto it = greek.find(stem);
  std::string base = it == greek.end() ? std::string(stem) : it->second;
  if (digits.empty()) return base;
  bool superscript = stem == "xi" || stem == "eta";
  std::string d = digits.size() == 1 ? std::string(digits) : "{" + std::string(digits) + "}";
  return base + (superscript ? "^" : "_") + d;
}

bool is_structure_function(const Atom& a) {
  if (a->kind != AtomKind::Function || a->deps.empty()) return false;
  for (const auto& d : a->deps) {
    if (is_independent_name(d)) return false;
  }
  return true;
}

std::string print_atom(const Atom& a, Format f) {
  const bool latex = f == Format::Latex;
  switch (a->kind) {
    case AtomKind::Symbol:
      return latex ? latex_name(a->name) : a->name;
    case AtomKind::Jet: {
      if (a->jet.order() == 0) return a->name;
      std::string sub = jet_subscript(a->jet);
      return latex ? a->name + "_{" + sub + "}" : a->name + "_" + sub;
    }
    case AtomKind::Function: {
      std::string name = latex ? latex_name(a->name) : a->name;
      if (prime_style(a)) {
        return name + std::string(a->index[0], '\'') + "(" + a->deps[0] + ")";
      }
      std::string sub = function_subscript(a);
      if (sub.empty()) return name;
      return latex ? name + "_{" + sub + "}" : name + "_" + sub;
    }
    case AtomKind::Exp: {
      std::string arg = expr_text(Expr(a->arg), f);
      return latex ? "e^{" + arg + "}" : "exp(" + arg + ")";
    }
    case AtomKind::Ln: {
      std::string arg = expr_text(Expr(a->arg), f);
      return latex ? "\\ln(" + arg + ")" : "ln(" + arg + ")";
    }
  }
  return "?";
}

std::string print(const Expr& e, Format format) { return expr_text(e, format); }

std::string print_collected(const Expr& e, Format f) {
  if (!e.is_polynomial()) return print(e, f);
  // group terms by their structure-function monomial, keeping the canonical order of keys
  std::vector<std::pair<Monomial, PolyAccumulator>> groups;
  for (const auto& t : e.num().terms()) {
    Monomial key;
    Monomial rest;
    for (const auto& [a, k] : t.mono.factors) {
      if (is_structure_function(a)) {
        key.factors.emplace_back(a, k);
      } else {
        rest = rest * atom_power(a, k);
      }
    }
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) {
      groups.emplace_back(key, PolyAccumulator());
      it = groups.end() - 1;
    }
    it->second.add(rest, t.coef);
  }
  std::stable_sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
    if (a.first.is_one() != b.first.is_one()) return b.first.is_one();
    return compare(a.first, b.first) > 0;
  });
  std::string s;
  bool first = true;
  for (auto& [key, acc] : groups) {
    Poly coef = acc.take();
    if (coef.is_zero()) continue;
    bool neg = sgn(coef.terms().front().coef) < 0;
    if (neg) coef = -coef;
    std::string body;
    if (key.is_one()) {
      body = poly_text(coef, f);
      if (coef.size() > 1 && neg) body = (f == Format::Latex ? "\\left(" : "(") + body + (f == Format::Latex ? "\\right)" : ")");
    } else {
      bool unused = false;
      std::string key_text = term_text(1, key, f, unused);
      std::string sep = f == Format::Latex ? " " : "*";
      if (coef.is_constant()) {
        Rational c = coef.constant_term();
        body = c == 1 ? key_text : term_text(c, Monomial{}, f, unused) + sep + key_text;
      } else if (coef.size() == 1) {
        body = poly_text(coef, f) + sep + key_text;
      } else {
        std::string inner = poly_text(coef, f);
        body = (f == Format::Latex ? "\\left(" + inner + "\\right)" : "(" + inner + ")") + sep + key_text;
      }
    }
    if (first) {
      s += neg ? "-" + body : body;
    } else {
      s += (neg ? (f == Format::Latex ? " - " : "-") : (f == Format::Latex ? " + " : "+")) + body;
    }
    first = false;
  }
  return s.empty() ? "0" : s;
}

}  // namespace kdvsym
