#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kdvsym/determining.hpp"
#include "kdvsym/eval.hpp"
#include "kdvsym/jet.hpp"
#include "kdvsym/symmetry.hpp"

namespace kdvsym {

/// The three determining systems of the class: Lie symmetries of the scalar
/// equation, of the potential system v_x = u, v_t = A u_xx + B u_x + C, and of
/// the potential system extended by v_xx = u_x.
enum class SystemKind { Scalar, Potential, Augmented };

std::string to_string(SystemKind k);
std::optional<SystemKind> system_kind_from_string(std::string_view s);

/// t, x, u, v with A(u) (nonzero), B(u), C(u), the parameters lbd, mu, lbd1
/// (nonzero), lbd2 and the constants C0..C3, plus the unknown functions of the
/// given system with the signatures printed after it.
Context paper_context(SystemKind k);

DetSystem paper_scalar_system(Context& ctx);
DetSystem paper_potential_system(Context& ctx);
DetSystem paper_augmented_system(Context& ctx);
DetSystem paper_system(SystemKind k, Context& ctx);

/// The class equation u_t = [A u_xx + B u_x + C]_x, or one of the two potential
/// systems, with A, B, C left arbitrary.
EvolutionSystem class_system(SystemKind k, Context& ctx);

struct DeriveOptions {
  bool cross_consequence = false;  // keep v_xt = u_t among the consequences
  int consequence_order = 0;       // differential consequences of lower-order rules
  int max_order = 6;               // highest u-derivative in the jet space, v two lower
};

struct Derivation {
  DetSystem system;
  EvolutionSystem target;
  std::vector<std::string> trace;
  std::size_t raw_equations = 0;
};

/// Determining system of an evolution system with the fully general ansatz
/// xi0, xi1, eta (or eta1, eta2) depending on t, x and every dependent variable.
/// Differential consequences are taken when the rules have different orders.
Derivation derive_system(const EvolutionSystem& sys, const DeriveOptions& opt, Context& ctx);

/// Outcome of asking whether sources imply target.
struct Implication {
  bool implied = false;
  Expr remainder;                   // target after reduction by the sources, zero when implied
  std::vector<std::string> solved;  // substitutions taken from solved-form sources
};

/// Sufficient test: target lies in the rational span of the sources and their
/// partial derivatives up to max_order, after eliminating unknowns that some
/// source expresses explicitly (f_J = rest, with rest free of f_K for K >= J).
Implication implies(const std::vector<Expr>& sources, const Expr& target, const Context& ctx,
                    int max_order = 3);

struct SolvedForm {
  Atom target;
  Expr replacement;
};

/// Echelon basis behind implies(), reusable for many targets.
class ConsequenceSpan {
 public:
  struct MonoGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  };
  using Row = std::map<Monomial, Rational, MonoGreater>;

  ConsequenceSpan(const std::vector<Expr>& sources, const Context& ctx, int max_order = 3);
  Implication test(const Expr& target) const;
  const std::vector<std::string>& solved() const { return text_; }

 private:
  void reduce(Row& row) const;
  void add(const Expr& e);

  const Context& ctx_;
  std::vector<SolvedForm> solved_;
  std::vector<std::string> text_;
  std::vector<Row> rows_;
  std::map<Monomial, std::size_t, MonoGreater> pivots_;
};

enum class MatchStatus { Matched, Differs, MissingInGenerated, ExtraInGenerated };
std::string to_string(MatchStatus s);

struct MatchEntry {
  MatchStatus status;
  std::string anchor;  // paper label, or "generated #k"
  Expr paper;          // zero for extra-in-generated entries
  Expr generated;      // closest generated equation, if any
  Expr diff;           // what is left over, for differs / missing / extra
  std::string how;     // "identical", "implied", ...
};

struct MatchReport {
  std::string which;
  std::vector<std::string> alignment;  // renaming substitutions applied to the generated side
  std::vector<MatchEntry> entries;
  bool full_match() const;
};

/// Compares two systems in both directions. alignment is applied to the
/// generated equations first (for example beta -> gamma_x).
MatchReport match_systems(const DetSystem& paper, const DetSystem& generated,
                          const std::vector<std::pair<Atom, Expr>>& alignment, const Context& ctx);

struct GeneratedMatch {
  Derivation derivation;
  DetSystem paper;
  MatchReport report;
};

GeneratedMatch generate_and_match(SystemKind k, const DeriveOptions& opt = {});

std::string format_match_report(const MatchReport& r);
std::string match_report_json(const MatchReport& r, int indent = 2);

/// One operation of a proof step: a partial derivative or an atom substitution.
struct Transform {
  enum class Kind { Differentiate, Substitute };
  Kind kind;
  std::string var;
  Atom target;
  Expr replacement;

  static Transform diff(std::string var);
  static Transform subst(Atom target, Expr replacement);
  std::string text() const;
};

Expr apply_transforms(const Expr& e, const std::vector<Transform>& ts);

struct ConsequenceVerdict {
  ZeroStatus status = ZeroStatus::Unknown;
  Expr factor;      // transformed source = factor * target (single source)
  Expr difference;  // what remains when the verdict is not Zero
  std::string detail;
  bool zero() const { return status == ZeroStatus::Zero; }
};

/// Zero when the transformed sources combine to the target: with one source, it
/// must equal the target times a rational constant times a product of atoms
/// assumed nonzero; with several, a rational combination of them must equal
/// the target. A zero target asks for every transformed source to vanish.
ConsequenceVerdict check_consequence(const std::vector<DetEquation>& sources,
                                     const std::vector<Transform>& transform, const DetEquation& target,
                                     const Context& ctx, std::uint64_t seed = 1);

/// Writes lhs as sum c_i * basis_i with u-free c_i and returns one equation
/// c_i = 0 per basis element, keeping the raw coefficients so that the
/// recombination reproduces lhs. Throws std::invalid_argument otherwise.
DetSystem split_by_u_basis(const DetEquation& eq, const std::vector<Expr>& basis, const Context& ctx);

/// Substitutes the assumption, drops equations that become zero and records
/// it. Throws ContextError when it contradicts a nonzero flag.
DetSystem specialize(const DetSystem& sys, const CaseAssumption& assumption, Context& ctx);

/// Instances of the class by name: kdv, mkdv, K(m,1), K(m,n), K(m,n)-template,
/// kdv-burgers, gen-kdv-burgers, paper-example. Missing parameters stay
/// symbolic where the family allows it; m and n must be given as integers.
/// Potential system v_x = u, v_t = flux of a conserved scalar equation
/// u_t = D_x(flux), with v_xx = u_x added when augmented is set.
EvolutionSystem potential_system(const EvolutionSystem& scalar, bool augmented, Context& ctx);

EvolutionSystem named_instance(const std::string& name, const std::map<std::string, Rational>& params,
                               Context& ctx);
std::vector<std::string> instance_names();

/// Scripted proof steps of Theorems 1 and 2 as consequence checks.
struct ProofStep {
  std::string id;
  std::string claim;
  ConsequenceVerdict verdict;
};
std::vector<ProofStep> theorem_steps(int theorem, std::uint64_t seed = 1);

}  // namespace kdvsym
