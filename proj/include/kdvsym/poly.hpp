#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kdvsym/atom.hpp"

namespace kdvsym {

using Rational = mpq_class;

std::string to_string(const Rational& q);
std::size_t hash_value(const Rational& q);

/// Laurent monomial over the atom kernel. Factors are sorted by atom order and
/// carry nonzero exponents; exp atoms are merged so at most one is present,
/// always with exponent one.
struct Monomial {
  std::vector<std::pair<Atom, int>> factors;

  bool is_one() const { return factors.empty(); }
  std::size_t hash() const;
  int exponent_of(const Atom& a) const;
  const Atom* exp_factor() const;
};

/// Lexicographic order on exponent vectors; compatible with multiplication
/// for monomials without exp factors.
int compare(const Monomial& a, const Monomial& b);
bool operator==(const Monomial& a, const Monomial& b);
Monomial operator*(const Monomial& a, const Monomial& b);
Monomial pow(const Monomial& m, int k);
Monomial atom_power(const Atom& a, int k);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
  Monomial mono;
  Rational coef;
};

/// Sparse Laurent polynomial with exact rational coefficients. Terms are kept
/// sorted by decreasing monomial order, so front() is the leading term.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rational& c);
  static Poly monomial(Monomial m, Rational c = 1);
  static Poly from_terms(std::vector<Term> terms);  // terms need not be sorted or unique

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_term() const;
  std::size_t hash() const;

  Poly scaled(const Rational& c) const;
  Poly times(const Monomial& m) const;
  Poly operator-() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  friend class PolyAccumulator;
  std::vector<Term> terms_;
};

int compare(const Poly& a, const Poly& b);

/// Collects terms in a hash map; cheaper than repeated sorted merges when
/// summing many products.
class PolyAccumulator {
 public:
  void add(const Monomial& m, const Rational& c);
  void add(const Poly& p, const Rational& scale = 1);
  void add_product(const Poly& p, const Monomial& m, const Rational& scale);
  Poly take();
  bool empty() const { return map_.empty(); }

 private:
  std::unordered_map<Monomial, Rational, MonomialHash> map_;
};

/// Exact quotient a / b when it exists (b without exp factors); nullopt otherwise.
std::optional<Poly> exact_divide(const Poly& a, const Poly& b);

}  // namespace kdvsym
