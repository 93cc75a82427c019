#include "kdvsym/context.hpp"

#include <algorithm>
#include <cctype>

namespace kdvsym {

namespace {

bool valid_identifier(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

const std::set<std::string>& reserved() {
  static const std::set<std::string> r{"diff", "ln", "exp"};
  return r;
}

}  // namespace

Context Context::standard() {
  Context c;
  c.add_independent("t");
  c.add_independent("x");
  c.add_dependent("u");
  c.add_dependent("v");
  return c;
}

void Context::claim(const std::string& name) {
  if (!valid_identifier(name)) throw ContextError("invalid identifier '" + name + "'");
  if (reserved().count(name)) throw ContextError("'" + name + "' is a reserved word");
  if (has(name)) throw ContextError("name '" + name + "' is already registered");
  order_.push_back(name);
}

void Context::add_independent(const std::string& name) {
  claim(name);
  if (name.size() != 1) throw ContextError("variable names must be single letters: " + name);
  symbols_.emplace(name, SymbolKind::Independent);
  independents_.push_back(name);
}

void Context::add_dependent(const std::string& name) {
  claim(name);
  if (name.size() != 1) throw ContextError("variable names must be single letters: " + name);
  symbols_.emplace(name, SymbolKind::Dependent);
  dependents_.push_back(name);
}

void Context::add_parameter(const std::string& name, bool nonzero) {
  claim(name);
  symbols_.emplace(name, SymbolKind::Parameter);
  if (nonzero) nonzero_.insert(name);
}

void Context::add_constant(const std::string& name, bool nonzero) {
  claim(name);
  symbols_.emplace(name, SymbolKind::Constant);
  if (nonzero) nonzero_.insert(name);
}

void Context::add_function(const std::string& name, std::vector<std::string> deps, bool nonzero) {
  for (const auto& d : deps) {
    if (!is_variable(d)) throw ContextError("dependency '" + d + "' of " + name + " is not a variable");
  }
  claim(name);
  functions_.emplace(name, FunctionSignature{name, std::move(deps)});
  if (nonzero) nonzero_.insert(name);
}

void Context::set_function(const std::string& name, std::vector<std::string> deps) {
  auto it = functions_.find(name);
  if (it == functions_.end()) {
    add_function(name, std::move(deps));
    return;
  }
  it->second.deps = std::move(deps);
}

void Context::remove(const std::string& name) {
  symbols_.erase(name);
  functions_.erase(name);
  nonzero_.erase(name);
  order_.erase(std::remove(order_.begin(), order_.end(), name), order_.end());
  independents_.erase(std::remove(independents_.begin(), independents_.end(), name),
                      independents_.end());
  dependents_.erase(std::remove(dependents_.begin(), dependents_.end(), name), dependents_.end());
}

void Context::assume_nonzero(const std::string& name) {
  if (!has(name)) throw ContextError("unknown name '" + name + "'");
  nonzero_.insert(name);
}

void Context::assume_nonzero(const Atom& a) {
  if (!is_nonzero(a)) nonzero_atoms_.push_back(a);
}

bool Context::has(std::string_view name) const {
  return symbols_.find(name) != symbols_.end() || functions_.find(name) != functions_.end();
}

std::optional<SymbolKind> Context::symbol_kind(std::string_view name) const {
  auto it = symbols_.find(name);
  if (it == symbols_.end()) return std::nullopt;
  return it->second;
}

const FunctionSignature* Context::function(std::string_view name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : &it->second;
}

bool Context::is_variable(std::string_view name) const {
  auto k = symbol_kind(name);
  return k && (*k == SymbolKind::Independent || *k == SymbolKind::Dependent);
}

bool Context::is_dependent(std::string_view name) const {
  auto k = symbol_kind(name);
  return k && *k == SymbolKind::Dependent;
}

bool Context::is_nonzero(const Atom& a) const {
  for (const auto& n : nonzero_atoms_) {
    if (atom_equal(n, a)) return true;
  }
  switch (a->kind) {
    case AtomKind::Exp:
      return true;
    case AtomKind::Symbol:
      return nonzero_.count(a->name) > 0;
    case AtomKind::Function:
      return derivative_order(a) == 0 && nonzero_.count(a->name) > 0;
    default:
      return false;
  }
}

Atom Context::atom_for(std::string_view name) const {
  if (auto k = symbol_kind(name)) {
    if (*k == SymbolKind::Dependent) return make_jet(std::string(name));
    return make_symbol(std::string(name));
  }
  if (const auto* f = function(name)) return make_function(f->name, f->deps);
  throw ContextError("unknown identifier '" + std::string(name) + "'");
}

std::vector<std::string> Context::parameters() const {
  std::vector<std::string> out;
  for (const auto& n : order_) {
    auto k = symbol_kind(n);
    if (k && (*k == SymbolKind::Parameter || *k == SymbolKind::Constant)) out.push_back(n);
  }
  return out;
}

std::vector<FunctionSignature> Context::functions() const {
  std::vector<FunctionSignature> out;
  for (const auto& n : order_) {
    if (const auto* f = function(n)) out.push_back(*f);
  }
  return out;
}

}  // namespace kdvsym
