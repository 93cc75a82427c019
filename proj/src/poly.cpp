#include "kdvsym/poly.hpp"

#include <algorithm>

#include "kdvsym/expr.hpp"

namespace kdvsym {

std::string to_string(const Rational& q) { return q.get_str(); }

std::size_t hash_value(const Rational& q) {
  std::size_t h = mpz_get_ui(q.get_num_mpz_t());
  h ^= (mpz_get_ui(q.get_den_mpz_t()) * 0x9e3779b97f4a7c15ULL);
  if (sgn(q) < 0) h = ~h;
  return h;
}

// ---------------------------------------------------------------- Monomial

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& [a, e] : factors) {
    h ^= a->hash + static_cast<std::size_t>(e) * 0x100000001b3ULL + (h << 6) + (h >> 2);
  }
  return h;
}

int Monomial::exponent_of(const Atom& a) const {
  for (const auto& [b, e] : factors) {
    if (atom_equal(a, b)) return e;
  }
  return 0;
}

const Atom* Monomial::exp_factor() const {
  for (const auto& f : factors) {
    if (f.first->kind == AtomKind::Exp) return &f.first;
  }
  return nullptr;
}

int compare(const Monomial& a, const Monomial& b) {
  const auto& fa = a.factors;
  const auto& fb = b.factors;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() || j < fb.size()) {
    int c;
    if (i == fa.size()) {
      c = 1;
    } else if (j == fb.size()) {
      c = -1;
    } else {
      c = compare(fa[i].first, fb[j].first);
    }
    if (c < 0) return fa[i].second > 0 ? 1 : -1;
    if (c > 0) return fb[j].second > 0 ? -1 : 1;
    if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second ? -1 : 1;
    ++i;
    ++j;
  }
  return 0;
}

bool operator==(const Monomial& a, const Monomial& b) {
  if (a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    if (a.factors[i].second != b.factors[i].second) return false;
    if (!atom_equal(a.factors[i].first, b.factors[i].first)) return false;
  }
  return true;
}

namespace {

void insert_sorted(std::vector<std::pair<Atom, int>>& fs, Atom a, int e) {
  auto it = std::lower_bound(fs.begin(), fs.end(), a,
                             [](const auto& f, const Atom& x) { return compare(f.first, x) < 0; });
  fs.insert(it, {std::move(a), e});
}

}  // namespace

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.factors.empty()) return b;
  if (b.factors.empty()) return a;
  const Atom* ea = a.exp_factor();
  const Atom* eb = b.exp_factor();
  Monomial r;
  r.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& fa = a.factors;
  const auto& fb = b.factors;
  while (i < fa.size() || j < fb.size()) {
    if (i < fa.size() && fa[i].first->kind == AtomKind::Exp && eb) {
      ++i;
      continue;
    }
    if (j < fb.size() && fb[j].first->kind == AtomKind::Exp && ea) {
      ++j;
      continue;
    }
    int c;
    if (i == fa.size()) {
      c = 1;
    } else if (j == fb.size()) {
      c = -1;
    } else {
      c = compare(fa[i].first, fb[j].first);
    }
    if (c < 0) {
      r.factors.push_back(fa[i++]);
    } else if (c > 0) {
      r.factors.push_back(fb[j++]);
    } else {
      int e = fa[i].second + fb[j].second;
      if (e != 0) r.factors.emplace_back(fa[i].first, e);
      ++i;
      ++j;
    }
  }
  if (ea && eb) {
    Expr sum = Expr((*ea)->arg) + Expr((*eb)->arg);
    if (!sum.is_zero()) insert_sorted(r.factors, make_exp_atom(sum.rep()), 1);
  }
  return r;
}

Monomial pow(const Monomial& m, int k) {
  Monomial r;
  if (k == 0) return r;
  for (const auto& [a, e] : m.factors) {
    if (a->kind == AtomKind::Exp) {
      Expr scaled = Expr(a->arg) * Expr(k);
      r.factors.emplace_back(make_exp_atom(scaled.rep()), 1);
    } else {
      r.factors.emplace_back(a, e * k);
    }
  }
  // scaling an exp argument may change its rank among exp atoms, but only one exists
  return r;
}

Monomial atom_power(const Atom& a, int k) {
  Monomial m;
  if (k == 0) return m;
  if (a->kind == AtomKind::Exp) {
    if (k == 1) {
      m.factors.emplace_back(a, 1);
    } else {
      Expr scaled = Expr(a->arg) * Expr(k);
      m.factors.emplace_back(make_exp_atom(scaled.rep()), 1);
    }
    return m;
  }
  m.factors.emplace_back(a, k);
  return m;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back(Term{Monomial{}, c});
}

Poly Poly::monomial(Monomial m, Rational c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.push_back(Term{std::move(m), std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  PolyAccumulator acc;
  for (auto& t : terms) acc.add(t.mono, t.coef);
  return acc.take();
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Poly::constant_term() const {
  for (const auto& t : terms_) {
    if (t.mono.is_one()) return t.coef;
  }
  return 0;
}

std::size_t Poly::hash() const {
  std::size_t h = 0x84222325cbf29ce4ULL;
  for (const auto& t : terms_) {
    h ^= t.mono.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= hash_value(t.coef) + (h << 3);
  }
  return h;
}

Poly Poly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return Poly();
  Poly r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Poly Poly::times(const Monomial& m) const {
  if (m.is_one()) return *this;
  if (m.exp_factor() == nullptr) {
    // multiplication by an exp-free monomial preserves the lexicographic order
    bool has_exp = false;
    for (const auto& t : terms_) has_exp = has_exp || t.mono.exp_factor() != nullptr;
    if (!has_exp) {
      Poly r;
      r.terms_.reserve(terms_.size());
      for (const auto& t : terms_) r.terms_.push_back(Term{t.mono * m, t.coef});
      return r;
    }
  }
  PolyAccumulator acc;
  acc.add_product(*this, m, 1);
  return acc.take();
}

Poly Poly::operator-() const { return scaled(-1); }

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Poly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    int c = compare(a.terms_[i].mono, b.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      Rational s = a.terms_[i].coef + b.terms_[j].coef;
      if (sgn(s) != 0) r.terms_.push_back(Term{a.terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  while (i < a.terms_.size()) r.terms_.push_back(a.terms_[i++]);
  while (j < b.terms_.size()) r.terms_.push_back(b.terms_[j++]);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.is_constant()) return b.scaled(a.terms_[0].coef);
  if (b.is_constant()) return a.scaled(b.terms_[0].coef);
  PolyAccumulator acc;
  for (const auto& tb : b.terms_) acc.add_product(a, tb.mono, tb.coef);
  return acc.take();
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coef != b.terms_[i].coef) return false;
    if (!(a.terms_[i].mono == b.terms_[i].mono)) return false;
  }
  return true;
}

int compare(const Poly& a, const Poly& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
    if (int c = compare(ta[i].mono, tb[i].mono); c != 0) return c;
    if (ta[i].coef != tb[i].coef) return ta[i].coef < tb[i].coef ? -1 : 1;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------- PolyAccumulator

void PolyAccumulator::add(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = map_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void PolyAccumulator::add(const Poly& p, const Rational& scale) {
  for (const auto& t : p.terms()) add(t.mono, t.coef * scale);
}

void PolyAccumulator::add_product(const Poly& p, const Monomial& m, const Rational& scale) {
  for (const auto& t : p.terms()) add(t.mono * m, t.coef * scale);
}

Poly PolyAccumulator::take() {
  std::vector<Term> terms;
  terms.reserve(map_.size());
  for (auto& [m, c] : map_) {
    if (sgn(c) != 0) terms.push_back(Term{m, c});
  }
  map_.clear();
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
  Poly p;
  p.terms_ = std::move(terms);
  return p;
}

// ---------------------------------------------------------------- division

std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Poly();
  for (const auto& t : b.terms()) {
    if (t.mono.exp_factor()) return std::nullopt;
  }
  const Term& lead_b = b.terms().front();
  const Term& low_b = b.terms().back();
  Monomial inv_lead_b = pow(lead_b.mono, -1);
  Monomial lower_bound = a.terms().back().mono * pow(low_b.mono, -1);
  Poly r = a;
  PolyAccumulator quotient;
  const std::size_t cap = 4 * (a.size() + 1) * (b.size() + 1) + 64;
  for (std::size_t step = 0; !r.is_zero(); ++step) {
    if (step > cap) return std::nullopt;
    const Term& lead_r = r.terms().front();
    Monomial q = lead_r.mono * inv_lead_b;
    if (compare(q, lower_bound) < 0) return std::nullopt;
    Rational c = lead_r.coef / lead_b.coef;
    quotient.add(q, c);
    r = r - b.times(q).scaled(c);
  }
  return quotient.take();
}

}  // namespace kdvsym
