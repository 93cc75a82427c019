#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "kdvsym/context.hpp"
#include "kdvsym/expr.hpp"

namespace kdvsym {

class EvalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Values for atoms. Function atoms, including every derivative instance, are
/// opaque. Unbound ln atoms receive a pseudo-random value derived from seed
/// (after checking the argument is positive); unbound exp atoms are evaluated
/// through a character of the additive group of arguments, so
/// exp(a)*exp(b) and exp(a+b) always agree.
struct Bindings {
  std::unordered_map<Atom, Rational, AtomHash, AtomEq> values;
  std::uint64_t seed = 0;

  void set(const Atom& a, const Rational& v) { values[a] = v; }
};

Rational eval_numeric(const Expr& e, const Bindings& b);
Rational eval_numeric(const Node& n, const Bindings& b);

enum class ZeroStatus { Zero, NonZero, Unknown };

struct ZeroVerdict {
  ZeroStatus status = ZeroStatus::Unknown;
  Bindings witness;       // for NonZero: the probe that evaluated to a nonzero value
  Rational witness_value;  // the value at the witness
  int probes_used = 0;

  bool zero() const { return status == ZeroStatus::Zero; }
};

std::string to_string(ZeroStatus s);

/// Literal-zero test, then k random rational probes; never reports Zero for
/// an expression that is not literally zero.
ZeroVerdict is_zero(const Expr& e, const Context& ctx, std::uint64_t seed = 1, int probes = 8);

/// Random nonzero rational p/q, p in [-12, 12] \ {0}, q in [1, 7].
Rational random_rational(std::mt19937_64& rng);

}  // namespace kdvsym
