#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kdvsym/atom.hpp"

namespace kdvsym {

enum class SymbolKind { Independent, Dependent, Parameter, Constant };

struct FunctionSignature {
  std::string name;
  std::vector<std::string> deps;
};

class ContextError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Registry of names for parsing and zero testing. Independent variables and
/// parameters become symbol atoms, dependent variables become jet atoms.
class Context {
 public:
  /// t, x independent and u, v dependent.
  static Context standard();

  void add_independent(const std::string& name);
  void add_dependent(const std::string& name);
  void add_parameter(const std::string& name, bool nonzero = false);
  void add_constant(const std::string& name, bool nonzero = false);
  void add_function(const std::string& name, std::vector<std::string> deps, bool nonzero = false);
  /// Replaces the signature of an existing function (used when an ansatz shrinks).
  void set_function(const std::string& name, std::vector<std::string> deps);
  void remove(const std::string& name);
  void assume_nonzero(const std::string& name);
  /// Nonzero assumption on one specific atom, such as A'(u) or u.
  void assume_nonzero(const Atom& a);

  bool has(std::string_view name) const;
  std::optional<SymbolKind> symbol_kind(std::string_view name) const;
  const FunctionSignature* function(std::string_view name) const;
  bool is_variable(std::string_view name) const;
  bool is_dependent(std::string_view name) const;
  bool flagged_nonzero(std::string_view name) const { return nonzero_.count(std::string(name)) > 0; }

  /// Nonzero assumptions: flagged symbols, underived flagged functions and exp atoms.
  bool is_nonzero(const Atom& a) const;

  /// The atom a registered name denotes with no derivatives taken.
  Atom atom_for(std::string_view name) const;

  const std::vector<std::string>& independents() const { return independents_; }
  const std::vector<std::string>& dependents() const { return dependents_; }
  std::vector<std::string> parameters() const;
  std::vector<FunctionSignature> functions() const;

 private:
  void claim(const std::string& name);

  std::vector<std::string> independents_;
  std::vector<std::string> dependents_;
  std::map<std::string, SymbolKind, std::less<>> symbols_;
  std::map<std::string, FunctionSignature, std::less<>> functions_;
  std::vector<std::string> order_;
  std::set<std::string> nonzero_;
  std::vector<Atom> nonzero_atoms_;
};

}  // namespace kdvsym
