#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kdvsym/atom.hpp"
#include "kdvsym/poly.hpp"

namespace kdvsym {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by an expression that normalizes to zero") {}
};

using DenFactors = std::vector<std::pair<Poly, int>>;

/// Canonical rational function: Laurent numerator over the atom kernel divided
/// by a product of primitive, non-monomial polynomial factors.
struct ExprRep {
  Poly num;
  DenFactors den;
  std::size_t hash = 0;
};

int compare(const ExprRep& a, const ExprRep& b);

/// Normalized symbolic expression. Every Expr value is in canonical form, so
/// structural equality is semantic equality over the atom kernel.
class Expr {
 public:
  Expr();
  Expr(int c);  // NOLINT(google-explicit-constructor)
  Expr(long c);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
  explicit Expr(Poly p);
  explicit Expr(std::shared_ptr<const ExprRep> rep);

  static Expr atom(const Atom& a);
  static Expr symbol(std::string name) { return atom(make_symbol(std::move(name))); }
  static Expr from_parts(Poly num, DenFactors den);

  const Poly& num() const { return rep_->num; }
  const DenFactors& den() const { return rep_->den; }
  const std::shared_ptr<const ExprRep>& rep() const { return rep_; }
  std::size_t hash() const { return rep_->hash; }

  bool is_zero() const { return rep_->num.is_zero(); }
  bool is_polynomial() const { return rep_->den.empty(); }
  std::optional<Rational> constant_value() const;
  /// The atom if this expression is exactly one atom with coefficient 1.
  std::optional<Atom> as_atom() const;

  Expr pow(int k) const;
  Expr inverse() const;
  Expr operator-() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend bool operator==(const Expr& a, const Expr& b);

  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }

 private:
  std::shared_ptr<const ExprRep> rep_;
};

int compare(const Expr& a, const Expr& b);

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

Expr make_exp(const Expr& arg);
Expr make_ln(const Expr& arg);

/// Sums many expressions without re-sorting after every addition.
class ExprAccumulator {
 public:
  void add(const Expr& e, const Rational& scale = 1);
  void add_term(const Monomial& m, const Rational& c) { poly_.add(m, c); }
  void add_product(const Poly& p, const Monomial& m, const Rational& scale) {
    poly_.add_product(p, m, scale);
  }
  Expr take();

 private:
  PolyAccumulator poly_;
  std::vector<Expr> rational_parts_;
};

/// Raw (unnormalized) expression tree, as produced by the parser or built
/// directly. normalize() maps it to the canonical Expr.
class Node {
 public:
  enum class Kind { Number, Atom, Sum, Product, Power, Exp, Ln };

  static Node number(const Rational& value);
  static Node atom(const Atom& a);
  static Node sum(std::vector<Node> terms);
  static Node product(std::vector<Node> factors);
  static Node power(Node base, int exponent);
  static Node exp(Node arg);
  static Node ln(Node arg);

  Kind kind() const;
  const Rational& value() const;
  const Atom& atom_ref() const;
  const std::vector<Node>& children() const;
  int exponent() const;

 private:
  struct Data;
  explicit Node(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

Node operator+(const Node& a, const Node& b);
Node operator-(const Node& a, const Node& b);
Node operator*(const Node& a, const Node& b);
Node operator/(const Node& a, const Node& b);
Node operator-(const Node& a);

Expr normalize(const Node& n);
Node to_node(const Expr& e);

}  // namespace kdvsym
