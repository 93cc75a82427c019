#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kdvsym/calculus.hpp"
#include "kdvsym/context.hpp"
#include "kdvsym/expr.hpp"

namespace kdvsym {

class JetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Independent variables are always t and x; dependent variables are listed
/// with the highest derivative order a coordinate may reach.
struct JetSpace {
  std::map<std::string, int> max_order;

  static JetSpace standard();    // u: 4, v: 2
  static JetSpace derivation();  // u: 6, v: 4, room for reducing prolonged residuals
  static JetSpace with_max(int u_order);  // v two orders lower
  int max_for(const std::string& dependent) const;
};

Expr total_derivative(const Expr& e, char direction, const JetSpace& space);
Expr total_derivative(const Expr& e, const JetIndex& alpha, const JetSpace& space);

/// "head = rhs" with head a single jet coordinate.
struct Rule {
  Atom head;
  Expr rhs;
  std::string origin;  // "given", "D_x(v_x)", ...
  bool cross = false;  // derivative of another rule's head
};

/// Orients equation = 0 by isolating the coordinate with highest t-order,
/// then v before u, then highest order. Throws JetError if it does not occur linearly.
Rule orient(const Expr& equation, std::string origin = "given");

struct EvolutionSystem {
  std::string name;
  std::vector<Rule> rules;
  std::vector<std::string> params;
  std::optional<Expr> flux;  // u_t = D_x(flux) when the equation is known in conserved form

  std::vector<std::string> dependents() const;
  bool has_dependent(const std::string& w) const;
};

int rule_order(const Rule& r);

/// Rule set closed under the consequences requested. Heads that are first-order
/// t-derivatives (u_t, v_t) are also applied to all their derivatives (u_tx,
/// u_txx, ...) through total differentiation; explicit heads take precedence.
class SolutionManifold {
 public:
  SolutionManifold(EvolutionSystem sys, JetSpace space);
  SolutionManifold(const SolutionManifold& other);
  SolutionManifold& operator=(const SolutionManifold& other);

  const EvolutionSystem& system() const { return sys_; }
  const JetSpace& space() const { return space_; }
  const std::vector<Rule>& rules() const { return sys_.rules; }

  /// Fully reduced replacement for a jet coordinate, if it is eliminated.
  std::optional<Expr> reduce_atom(const Atom& a) const;
  Expr reduce(const Expr& e) const;

  /// Bound on nested rule applications; exceeding it throws JetError.
  static constexpr int kStepBudget = 256;

 private:
  std::optional<Expr> reduce_atom_depth(const Atom& a, int depth) const;
  Expr reduce_depth(const Expr& e, int depth) const;

  EvolutionSystem sys_;
  JetSpace space_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Atom, std::optional<Expr>, AtomHash, AtomEq> memo_;
};

/// Adds D^alpha of every rule of lower than maximal order, 1 <= |alpha| <= order.
/// A consequence whose head is a derivative of another head (v_xt from v_x next
/// to v_t) is a cross consequence and is kept only when include_cross is set.
SolutionManifold consequences(const EvolutionSystem& sys, int order, bool include_cross,
                              const JetSpace& space = JetSpace::standard());

Expr manifold_reduce(const Expr& e, const SolutionManifold& m);

/// Reads the "[system name]" text format: optional "params: a, b" line, then one
/// "lhs = rhs" per line ('#' starts a comment). Parameters are registered in ctx.
EvolutionSystem parse_system(std::string_view text, Context& ctx);
std::string format_system(const EvolutionSystem& sys);

}  // namespace kdvsym
