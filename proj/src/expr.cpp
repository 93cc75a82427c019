#include "kdvsym/expr.hpp"

#include <algorithm>
#include <map>

namespace kdvsym {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::shared_ptr<const ExprRep> make_rep(Poly num, DenFactors den) {
  auto rep = std::make_shared<ExprRep>();
  rep->num = std::move(num);
  rep->den = std::move(den);
  std::size_t h = rep->num.hash();
  for (const auto& [p, k] : rep->den) h = mix(mix(h, p.hash()), static_cast<std::size_t>(k));
  rep->hash = h;
  return rep;
}

const std::shared_ptr<const ExprRep>& zero_rep() {
  static const std::shared_ptr<const ExprRep> z = make_rep(Poly(), {});
  return z;
}

Poly poly_pow(const Poly& p, int k) {
  Poly result(Rational(1));
  Poly base = p;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

/// Splits p = c * m * q where m is a monomial (collecting the smallest power
/// of every atom and, when every term carries one, the leading exp factor)
/// and q has leading coefficient one.
struct PrimitiveSplit {
  Rational c;
  Monomial m;
  Poly q;
};

PrimitiveSplit primitive_split(const Poly& p) {
  Monomial content;
  bool all_exp = true;
  for (const auto& t : p.terms()) all_exp = all_exp && t.mono.exp_factor() != nullptr;
  Poly work = p;
  if (all_exp) {
    Monomial e;
    e.factors.emplace_back(*p.terms().front().mono.exp_factor(), 1);
    content = e;
    work = work.times(pow(e, -1));
  }
  // smallest exponent of each non-exp atom across all terms (absent counts as 0)
  std::map<Atom, int, AtomLess> mins;
  for (const auto& t : work.terms()) {
    for (const auto& [a, e] : t.mono.factors) {
      if (a->kind != AtomKind::Exp) mins.try_emplace(a, 0);
    }
  }
  for (auto& [a, low] : mins) {
    bool first = true;
    for (const auto& t : work.terms()) {
      int e = t.mono.exponent_of(a);
      low = first ? e : std::min(low, e);
      first = false;
    }
  }
  if (work.size() == 1) {
    return {p.terms().front().coef, p.terms().front().mono, Poly(Rational(1))};
  }
  Monomial m;
  for (const auto& [a, e] : mins) {
    if (e != 0) m.factors.emplace_back(a, e);
  }
  if (!m.is_one()) work = work.times(pow(m, -1));
  content = content * m;
  Rational c = work.terms().front().coef;
  if (c != 1) work = work.scaled(1 / c);
  return {c, content, work};
}

void sort_den(DenFactors& den) {
  std::sort(den.begin(), den.end(),
            [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
}

void add_factor(DenFactors& den, const Poly& q, int k) {
  for (auto& [p, e] : den) {
    if (p == q) {
      e += k;
      return;
    }
  }
  den.emplace_back(q, k);
}

/// Cancels denominator factors that divide the numerator exactly.
Expr finish(Poly num, DenFactors den) {
  if (num.is_zero()) return Expr();
  for (auto& [q, k] : den) {
    while (k > 0) {
      auto d = exact_divide(num, q);
      if (!d) break;
      num = std::move(*d);
      --k;
    }
  }
  den.erase(std::remove_if(den.begin(), den.end(), [](const auto& f) { return f.second == 0; }),
            den.end());
  sort_den(den);
  return Expr(make_rep(std::move(num), std::move(den)));
}

DenFactors merge_max(const DenFactors& a, const DenFactors& b) {
  DenFactors out = a;
  for (const auto& [q, k] : b) {
    bool found = false;
    for (auto& [p, e] : out) {
      if (p == q) {
        e = std::max(e, k);
        found = true;
        break;
      }
    }
    if (!found) out.emplace_back(q, k);
  }
  return out;
}

Poly lift(const Poly& num, const DenFactors& own, const DenFactors& common) {
  Poly r = num;
  for (const auto& [q, k] : common) {
    int have = 0;
    for (const auto& [p, e] : own) {
      if (p == q) have = e;
    }
    if (k > have) r = r * poly_pow(q, k - have);
  }
  return r;
}

bool same_den(const DenFactors& a, const DenFactors& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].second != b[i].second || !(a[i].first == b[i].first)) return false;
  }
  return true;
}

}  // namespace

int compare(const ExprRep& a, const ExprRep& b) {
  if (&a == &b) return 0;
  if (int c = compare(a.num, b.num); c != 0) return c;
  if (a.den.size() != b.den.size()) return a.den.size() < b.den.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.den.size(); ++i) {
    if (int c = compare(a.den[i].first, b.den[i].first); c != 0) return c;
    if (a.den[i].second != b.den[i].second) return a.den[i].second < b.den[i].second ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------- Expr

Expr::Expr() : rep_(zero_rep()) {}
Expr::Expr(int c) : Expr(Rational(c)) {}
Expr::Expr(long c) : Expr(Rational(c)) {}
Expr::Expr(const Rational& c) : rep_(sgn(c) == 0 ? zero_rep() : make_rep(Poly(c), {})) {}
Expr::Expr(Poly p) : rep_(make_rep(std::move(p), {})) {}
Expr::Expr(std::shared_ptr<const ExprRep> rep) : rep_(std::move(rep)) {}

Expr Expr::atom(const Atom& a) { return Expr(Poly::monomial(atom_power(a, 1))); }

Expr Expr::from_parts(Poly num, DenFactors den) {
  if (num.is_zero()) {
    for (const auto& [p, k] : den) {
      if (p.is_zero() && k > 0) throw DivisionByZero();
    }
    return Expr();
  }
  Rational scale = 1;
  Monomial shift;
  DenFactors out;
  for (auto& [p, k] : den) {
    if (k == 0) continue;
    if (p.is_zero()) {
      if (k > 0) throw DivisionByZero();
      return Expr();
    }
    if (k < 0) {
      num = num * poly_pow(p, -k);
      continue;
    }
    PrimitiveSplit s = primitive_split(p);
    for (int i = 0; i < k; ++i) scale /= s.c;
    shift = shift * kdvsym::pow(s.m, -k);
    if (s.q.is_constant()) continue;
    if (s.q.is_monomial()) {
      shift = shift * kdvsym::pow(s.q.terms().front().mono, -k);
      continue;
    }
    add_factor(out, s.q, k);
  }
  if (!shift.is_one()) num = num.times(shift);
  if (scale != 1) num = num.scaled(scale);
  return finish(std::move(num), std::move(out));
}

std::optional<Rational> Expr::constant_value() const {
  if (!rep_->den.empty() || !rep_->num.is_constant()) return std::nullopt;
  return rep_->num.constant_term();
}

std::optional<Atom> Expr::as_atom() const {
  if (!rep_->den.empty() || rep_->num.size() != 1) return std::nullopt;
  const Term& t = rep_->num.terms().front();
  if (t.coef != 1 || t.mono.factors.size() != 1 || t.mono.factors[0].second != 1) {
    return std::nullopt;
  }
  return t.mono.factors[0].first;
}

Expr Expr::pow(int k) const {
  if (k == 0) return Expr(1);
  if (k < 0) return inverse().pow(-k);
  if (k == 1) return *this;
  if (is_zero()) return Expr();
  Poly num;
  if (rep_->num.is_monomial()) {
    const Term& t = rep_->num.terms().front();
    Rational c = 1;
    for (int i = 0; i < k; ++i) c *= t.coef;
    num = Poly::monomial(kdvsym::pow(t.mono, k), c);
  } else {
    num = poly_pow(rep_->num, k);
  }
  DenFactors den = rep_->den;
  for (auto& f : den) f.second *= k;
  return Expr(make_rep(std::move(num), std::move(den)));
}

Expr Expr::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Poly num(Rational(1));
  for (const auto& [q, k] : rep_->den) num = num * poly_pow(q, k);
  DenFactors den;
  den.emplace_back(rep_->num, 1);
  return from_parts(std::move(num), std::move(den));
}

Expr Expr::operator-() const {
  if (is_zero()) return *this;
  return Expr(make_rep(-rep_->num, rep_->den));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_polynomial() && b.is_polynomial()) {
    Poly s = a.num() + b.num();
    if (s.is_zero()) return Expr();
    return Expr(std::move(s));
  }
  if (same_den(a.den(), b.den())) return finish(a.num() + b.num(), a.den());
  DenFactors common = merge_max(a.den(), b.den());
  Poly s = lift(a.num(), a.den(), common) + lift(b.num(), b.den(), common);
  return finish(std::move(s), std::move(common));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_polynomial() && b.is_polynomial()) return Expr(a.num() * b.num());
  DenFactors den = a.den();
  for (const auto& [q, k] : b.den()) add_factor(den, q, k);
  return finish(a.num() * b.num(), std::move(den));
}

Expr operator/(const Expr& a, const Expr& b) { return a * b.inverse(); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(*a.rep_, *b.rep_) == 0;
}

int compare(const Expr& a, const Expr& b) { return compare(*a.rep(), *b.rep()); }

Expr make_exp(const Expr& arg) {
  if (arg.is_zero()) return Expr(1);
  return Expr::atom(make_exp_atom(arg.rep()));
}

Expr make_ln(const Expr& arg) {
  if (arg.is_zero()) throw std::domain_error("ln of an expression that normalizes to zero");
  if (auto c = arg.constant_value(); c && *c == 1) return Expr();
  return Expr::atom(make_ln_atom(arg.rep()));
}

// ---------------------------------------------------------------- ExprAccumulator

void ExprAccumulator::add(const Expr& e, const Rational& scale) {
  if (e.is_zero() || sgn(scale) == 0) return;
  if (e.is_polynomial()) {
    poly_.add(e.num(), scale);
  } else {
    rational_parts_.push_back(scale == 1 ? e : e * Expr(scale));
  }
}

Expr ExprAccumulator::take() {
  Expr r(poly_.take());
  if (r.num().is_zero()) r = Expr();
  for (const auto& e : rational_parts_) r = r + e;
  rational_parts_.clear();
  return r;
}

// ---------------------------------------------------------------- Node

struct Node::Data {
  Kind kind;
  Rational value;
  Atom atom;
  std::vector<Node> children;
  int exponent = 0;
};

Node Node::number(const Rational& value) {
  return Node(std::make_shared<const Data>(Data{Kind::Number, value, nullptr, {}, 0}));
}

Node Node::atom(const Atom& a) {
  return Node(std::make_shared<const Data>(Data{Kind::Atom, 0, a, {}, 0}));
}

Node Node::sum(std::vector<Node> terms) {
  return Node(std::make_shared<const Data>(Data{Kind::Sum, 0, nullptr, std::move(terms), 0}));
}

Node Node::product(std::vector<Node> factors) {
  return Node(
      std::make_shared<const Data>(Data{Kind::Product, 0, nullptr, std::move(factors), 0}));
}

Node Node::power(Node base, int exponent) {
  return Node(std::make_shared<const Data>(
      Data{Kind::Power, 0, nullptr, std::vector<Node>{std::move(base)}, exponent}));
}

Node Node::exp(Node arg) {
  return Node(std::make_shared<const Data>(
      Data{Kind::Exp, 0, nullptr, std::vector<Node>{std::move(arg)}, 0}));
}

Node Node::ln(Node arg) {
  return Node(std::make_shared<const Data>(
      Data{Kind::Ln, 0, nullptr, std::vector<Node>{std::move(arg)}, 0}));
}

Node::Kind Node::kind() const { return d_->kind; }
const Rational& Node::value() const { return d_->value; }
const Atom& Node::atom_ref() const { return d_->atom; }
const std::vector<Node>& Node::children() const { return d_->children; }
int Node::exponent() const { return d_->exponent; }

Node operator+(const Node& a, const Node& b) { return Node::sum({a, b}); }
Node operator-(const Node& a, const Node& b) { return Node::sum({a, -b}); }
Node operator*(const Node& a, const Node& b) { return Node::product({a, b}); }
Node operator/(const Node& a, const Node& b) { return Node::product({a, Node::power(b, -1)}); }
Node operator-(const Node& a) { return Node::product({Node::number(-1), a}); }

Expr normalize(const Node& n) {
  switch (n.kind()) {
    case Node::Kind::Number:
      return Expr(n.value());
    case Node::Kind::Atom:
      return Expr::atom(n.atom_ref());
    case Node::Kind::Sum: {
      ExprAccumulator acc;
      for (const auto& c : n.children()) acc.add(normalize(c));
      return acc.take();
    }
    case Node::Kind::Product: {
      Expr r(1);
      for (const auto& c : n.children()) {
        r = r * normalize(c);
      }
      return r;
    }
    case Node::Kind::Power:
      return normalize(n.children()[0]).pow(n.exponent());
    case Node::Kind::Exp:
      return make_exp(normalize(n.children()[0]));
    case Node::Kind::Ln:
      return make_ln(normalize(n.children()[0]));
  }
  return Expr();
}

namespace {

Node atom_node(const Atom& a) {
  if (a->kind == AtomKind::Exp) return Node::exp(to_node(Expr(a->arg)));
  if (a->kind == AtomKind::Ln) return Node::ln(to_node(Expr(a->arg)));
  return Node::atom(a);
}

Node poly_node(const Poly& p) {
  std::vector<Node> terms;
  for (const auto& t : p.terms()) {
    std::vector<Node> factors;
    if (t.coef != 1 || t.mono.is_one()) factors.push_back(Node::number(t.coef));
    for (const auto& [a, e] : t.mono.factors) {
      factors.push_back(e == 1 ? atom_node(a) : Node::power(atom_node(a), e));
    }
    terms.push_back(factors.size() == 1 ? factors[0] : Node::product(std::move(factors)));
  }
  if (terms.empty()) return Node::number(0);
  return terms.size() == 1 ? terms[0] : Node::sum(std::move(terms));
}

}  // namespace

Node to_node(const Expr& e) {
  Node num = poly_node(e.num());
  if (e.den().empty()) return num;
  std::vector<Node> factors{num};
  for (const auto& [q, k] : e.den()) factors.push_back(Node::power(poly_node(q), -k));
  return Node::product(std::move(factors));
}

}  // namespace kdvsym
