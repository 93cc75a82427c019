#include "kdvsym/eval.hpp"

#include "kdvsym/calculus.hpp"
#include "kdvsym/print.hpp"

namespace kdvsym {

namespace {

/// Exponents of exp arguments are scaled by this constant so that arguments
/// with denominators dividing it evaluate to exact rationals.
constexpr int kExpScale = 6;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rational pow_int(const Rational& b, long k) {
  if (k == 0) return 1;
  if (sgn(b) == 0) {
    if (k < 0) throw EvalError("zero raised to a negative power");
    return 0;
  }
  Rational base = k < 0 ? Rational(1 / b) : b;
  unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), n);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Base of the exp character for one generator (a monomial of an exp argument).
Rational generator_base(std::size_t h, std::uint64_t seed) {
  static const int nums[] = {2, 3, 5, 7};
  static const int dens[] = {1, 2, 3};
  std::uint64_t r = splitmix(h ^ splitmix(seed + 0x5151));
  int p = nums[r % 4];
  int q = dens[(r >> 8) % 3];
  return Rational(p, q);
}

Rational ln_value(const Atom& a, std::uint64_t seed) {
  std::uint64_t r = splitmix(a->hash ^ splitmix(seed + 0x1717));
  long p = static_cast<long>(r % 23) - 11;
  if (p == 0) p = 13;
  long q = static_cast<long>((r >> 16) % 5) + 1;
  Rational v(p, q);
  v.canonicalize();
  return v;
}

Rational eval_poly(const Poly& p, const Bindings& b);

Rational exp_value(const ExprRep& arg, const Bindings& b) {
  Rational result = 1;
  if (!arg.den.empty()) {
    return pow_int(generator_base(arg.hash, b.seed), kExpScale);
  }
  for (const auto& t : arg.num.terms()) {
    Rational e = t.coef * kExpScale;
    if (e.get_den() != 1) throw EvalError("exp argument coefficient not supported by the evaluator");
    result *= pow_int(generator_base(t.mono.hash(), b.seed), e.get_num().get_si());
  }
  return result;
}

Rational atom_value(const Atom& a, const Bindings& b) {
  auto it = b.values.find(a);
  if (it != b.values.end()) return it->second;
  if (a->kind == AtomKind::Exp) return exp_value(*a->arg, b);
  if (a->kind == AtomKind::Ln) {
    Rational arg = eval_numeric(Expr(a->arg), b);
    if (sgn(arg) <= 0) throw EvalError("ln of a non-positive value");
    return ln_value(a, b.seed);
  }
  throw EvalError("unbound atom " + print_atom(a));
}

Rational eval_poly(const Poly& p, const Bindings& b) {
  Rational sum = 0;
  for (const auto& t : p.terms()) {
    Rational v = t.coef;
    for (const auto& [a, k] : t.mono.factors) {
      v *= pow_int(atom_value(a, b), a->kind == AtomKind::Exp ? 1 : k);
    }
    sum += v;
  }
  return sum;
}

}  // namespace

std::string to_string(ZeroStatus s) {
  switch (s) {
    case ZeroStatus::Zero:
      return "zero";
    case ZeroStatus::NonZero:
      return "nonzero";
    case ZeroStatus::Unknown:
      return "unknown";
  }
  return "unknown";
}

Rational eval_numeric(const Expr& e, const Bindings& b) {
  Rational num = eval_poly(e.num(), b);
  if (e.is_polynomial()) return num;
  Rational den = 1;
  for (const auto& [q, k] : e.den()) den *= pow_int(eval_poly(q, b), k);
  if (sgn(den) == 0) throw EvalError("zero denominator");
  return num / den;
}

Rational eval_numeric(const Node& n, const Bindings& b) {
  switch (n.kind()) {
    case Node::Kind::Number:
      return n.value();
    case Node::Kind::Atom:
      if (n.atom_ref()->kind == AtomKind::Exp || n.atom_ref()->kind == AtomKind::Ln) {
        return eval_numeric(Expr::atom(n.atom_ref()), b);
      }
      return atom_value(n.atom_ref(), b);
    case Node::Kind::Sum: {
      Rational s = 0;
      for (const auto& c : n.children()) s += eval_numeric(c, b);
      return s;
    }
    case Node::Kind::Product: {
      Rational p = 1;
      for (const auto& c : n.children()) p *= eval_numeric(c, b);
      return p;
    }
    case Node::Kind::Power:
      return pow_int(eval_numeric(n.children()[0], b), n.exponent());
    case Node::Kind::Exp: {
      Expr arg = normalize(n.children()[0]);
      if (arg.is_zero()) return 1;
      Atom a = make_exp_atom(arg.rep());
      auto it = b.values.find(a);
      if (it != b.values.end()) return it->second;
      return exp_value(*arg.rep(), b);
    }
    case Node::Kind::Ln: {
      Rational v = eval_numeric(n.children()[0], b);
      if (sgn(v) <= 0) throw EvalError("ln of a non-positive value");
      Expr arg = normalize(n.children()[0]);
      if (auto c = arg.constant_value(); c && *c == 1) return 0;
      Atom a = make_ln_atom(arg.rep());
      auto it = b.values.find(a);
      if (it != b.values.end()) return it->second;
      return ln_value(a, b.seed);
    }
  }
  return 0;
}

Rational random_rational(std::mt19937_64& rng) {
  long p = static_cast<long>(rng() % 24) - 12;
  if (p >= 0) ++p;  // skip zero
  long q = static_cast<long>(rng() % 7) + 1;
  Rational r(p, q);
  r.canonicalize();
  return r;
}

ZeroVerdict is_zero(const Expr& e, const Context& ctx, std::uint64_t seed, int probes) {
  (void)ctx;  // every probe value is nonzero, so nonzero assumptions always hold
  ZeroVerdict v;
  if (e.is_zero()) {
    v.status = ZeroStatus::Zero;
    return v;
  }
  std::vector<Atom> atoms = sorted_atoms(e, true);
  std::mt19937_64 rng(seed);
  int successful = 0;
  const int max_attempts = probes * 6;
  for (int attempt = 0; attempt < max_attempts && successful < probes; ++attempt) {
    Bindings b;
    b.seed = rng();
    for (const auto& a : atoms) {
      if (a->kind == AtomKind::Exp || a->kind == AtomKind::Ln) continue;
      b.values.emplace(a, random_rational(rng));
    }
    Rational value;
    try {
      value = eval_numeric(e, b);
    } catch (const EvalError&) {
      continue;
    }
    ++successful;
    if (sgn(value) != 0) {
      v.status = ZeroStatus::NonZero;
      v.witness = std::move(b);
      v.witness_value = value;
      v.probes_used = successful;
      return v;
    }
  }
  v.status = ZeroStatus::Unknown;
  v.probes_used = successful;
  return v;
}

}  // namespace kdvsym
