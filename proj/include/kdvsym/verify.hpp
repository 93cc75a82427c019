#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kdvsym/detsys.hpp"
#include "kdvsym/eval.hpp"
#include "kdvsym/jet.hpp"
#include "kdvsym/vector_field.hpp"

namespace kdvsym {

struct ResidualTerm {
  std::string rule;  // head of the rule, e.g. "u_t"
  Monomial basis;    // jet monomial the coefficient multiplies
  Expr coefficient;
};

struct Verdict {
  ZeroStatus is_symmetry = ZeroStatus::Unknown;  // Zero means every residual vanishes
  std::vector<std::pair<std::string, Expr>> residuals;
  std::vector<ResidualTerm> report;  // nonzero parts, filled when a residual is not zero
  std::string unresolved;            // residual whose probes all vanished

  bool yes() const { return is_symmetry == ZeroStatus::Zero; }
};

struct CheckOptions {
  std::uint64_t seed = 1;
  int consequence_order = 0;
  bool cross_consequence = false;
  int max_order = 6;
};

/// Prolongs X, reduces each rule's residual on the solution manifold and tests
/// it for zero. Throws std::invalid_argument when X involves a dependent
/// variable the system lacks.
Verdict check_symmetry(const VectorField& X, const EvolutionSystem& target, const Context& ctx,
                       const CheckOptions& opt = {});

std::string format_verdict(const Verdict& v);

enum class OperatorKind { Lie, PurePotential };
std::string to_string(OperatorKind k);

struct OperatorClass {
  OperatorKind kind = OperatorKind::Lie;
  std::string witness;  // coefficient that depends on v, e.g. "d/du"
};

/// Pure potential iff the coefficient of d/dt, d/dx or d/du depends on v; the
/// coefficient of d/dv is not consulted.
OperatorClass classify_operator(const VectorField& X);

struct SuiteOptions {
  std::optional<Rational> lbd;  // left symbolic when absent
  std::optional<Rational> mu;
  Rational eta1_scale = 1;  // multiplies the leading mu of the d/du coefficient
  std::uint64_t seed = 1;
};

struct SuiteStep {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::vector<SuiteStep> steps;
  bool all_pass() const;
};

/// The worked example: the particular solution of the augmented determining
/// system, the operator's invariance, its classification, the mu = 0
/// degeneration and the operator without d/dv. Throws std::invalid_argument
/// for lbd = 0.
SuiteReport paper_example_suite(const SuiteOptions& opt = {});

/// Operator of the example in the symbols lbd, mu, C0..C3 (registered in ctx).
VectorField paper_example_operator(Context& ctx, const Rational& eta1_scale = 1);

std::string format_suite(const SuiteReport& r);

}  // namespace kdvsym
