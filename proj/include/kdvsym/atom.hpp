#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kdvsym {

struct ExprRep;

/// Kinds of indivisible building blocks of a canonical expression. The
/// enumeration order is part of the canonical atom order.
enum class AtomKind : std::uint8_t { Symbol, Jet, Function, Exp, Ln };

/// Multi-index of a jet coordinate over the independent variables (t, x).
/// Storing counts rather than a word makes u_xt and u_tx the same coordinate.
struct JetIndex {
  int t = 0;
  int x = 0;

  int order() const { return t + x; }
  JetIndex shifted(char direction, int k = 1) const;
  bool divides(const JetIndex& other) const { return t <= other.t && x <= other.x; }
  bool operator==(const JetIndex&) const = default;
};

struct AtomData {
  AtomKind kind;
  std::string name;               // symbol, dependent variable or function name
  std::vector<std::string> deps;  // function dependency list
  std::vector<int> index;         // function derivative multi-index over deps
  JetIndex jet;                   // jet coordinate multi-index
  std::shared_ptr<const ExprRep> arg;  // normalized argument of exp / ln
  std::size_t hash = 0;
};

using Atom = std::shared_ptr<const AtomData>;

Atom make_symbol(std::string name);
Atom make_jet(std::string dependent, JetIndex index = {});
Atom make_function(std::string name, std::vector<std::string> deps, std::vector<int> index = {});
Atom make_exp_atom(std::shared_ptr<const ExprRep> arg);
Atom make_ln_atom(std::shared_ptr<const ExprRep> arg);

/// Total order: kind, then name, then derivative index (lexicographic).
int compare(const Atom& a, const Atom& b);
bool atom_equal(const Atom& a, const Atom& b);

struct AtomLess {
  bool operator()(const Atom& a, const Atom& b) const { return compare(a, b) < 0; }
};
struct AtomHash {
  std::size_t operator()(const Atom& a) const { return a->hash; }
};
struct AtomEq {
  bool operator()(const Atom& a, const Atom& b) const { return atom_equal(a, b); }
};

inline bool is_symbol(const Atom& a) { return a->kind == AtomKind::Symbol; }
inline bool is_jet(const Atom& a) { return a->kind == AtomKind::Jet; }
inline bool is_function(const Atom& a) { return a->kind == AtomKind::Function; }
inline bool is_exp(const Atom& a) { return a->kind == AtomKind::Exp; }
inline bool is_ln(const Atom& a) { return a->kind == AtomKind::Ln; }

/// Differential order of a jet coordinate or function derivative; zero otherwise.
int derivative_order(const Atom& a);

/// The underived instance of a function atom.
Atom function_base(const Atom& f);
Atom with_index(const Atom& f, std::vector<int> index);
std::optional<std::size_t> dep_position(const Atom& f, std::string_view var);

/// True if the atom varies with the named variable (an independent variable,
/// a dependent variable, or a parameter name).
bool atom_depends_on(const Atom& a, std::string_view var);

}  // namespace kdvsym
