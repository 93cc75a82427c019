#include "kdvsym/atom.hpp"

#include <functional>
#include <stdexcept>

#include "kdvsym/expr.hpp"

namespace kdvsym {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_atom(const AtomData& d) {
  std::size_t h = std::hash<int>{}(static_cast<int>(d.kind));
  h = mix(h, std::hash<std::string>{}(d.name));
  for (const auto& dep : d.deps) h = mix(h, std::hash<std::string>{}(dep));
  for (int i : d.index) h = mix(h, std::hash<int>{}(i));
  h = mix(h, std::hash<int>{}(d.jet.t * 131 + d.jet.x));
  if (d.arg) h = mix(h, d.arg->hash);
  return h;
}

Atom finish(AtomData d) {
  d.hash = hash_atom(d);
  return std::make_shared<const AtomData>(std::move(d));
}

int cmp_int(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }

}  // namespace

JetIndex JetIndex::shifted(char direction, int k) const {
  JetIndex r = *this;
  if (direction == 't') {
    r.t += k;
  } else if (direction == 'x') {
    r.x += k;
  } else {
    throw std::invalid_argument(std::string("unknown jet direction '") + direction + "'");
  }
  return r;
}

Atom make_symbol(std::string name) {
  AtomData d{AtomKind::Symbol, std::move(name), {}, {}, {}, nullptr};
  return finish(std::move(d));
}

Atom make_jet(std::string dependent, JetIndex index) {
  AtomData d{AtomKind::Jet, std::move(dependent), {}, {}, index, nullptr};
  return finish(std::move(d));
}

Atom make_function(std::string name, std::vector<std::string> deps, std::vector<int> index) {
  if (index.empty()) index.assign(deps.size(), 0);
  if (index.size() != deps.size()) {
    throw std::invalid_argument("derivative index length must match dependency list of " + name);
  }
  AtomData d{AtomKind::Function, std::move(name), std::move(deps), std::move(index), {}, nullptr};
  return finish(std::move(d));
}

Atom make_exp_atom(std::shared_ptr<const ExprRep> arg) {
  AtomData d{AtomKind::Exp, "exp", {}, {}, {}, std::move(arg)};
  return finish(std::move(d));
}

Atom make_ln_atom(std::shared_ptr<const ExprRep> arg) {
  AtomData d{AtomKind::Ln, "ln", {}, {}, {}, std::move(arg)};
  return finish(std::move(d));
}

int compare(const Atom& a, const Atom& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->kind == AtomKind::Exp || a->kind == AtomKind::Ln) return compare(*a->arg, *b->arg);
  if (int c = a->name.compare(b->name); c != 0) return c < 0 ? -1 : 1;
  if (a->kind == AtomKind::Jet) {
    if (int c = cmp_int(a->jet.order(), b->jet.order()); c != 0) return c;
    if (int c = cmp_int(a->jet.x, b->jet.x); c != 0) return -c;
    return cmp_int(a->jet.t, b->jet.t);
  }
  if (a->kind == AtomKind::Function) {
    if (a->deps != b->deps) return a->deps < b->deps ? -1 : 1;
    if (a->index != b->index) return a->index < b->index ? -1 : 1;
  }
  return 0;
}

bool atom_equal(const Atom& a, const Atom& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash) return false;
  return compare(a, b) == 0;
}

int derivative_order(const Atom& a) {
  if (a->kind == AtomKind::Jet) return a->jet.order();
  if (a->kind == AtomKind::Function) {
    int n = 0;
    for (int i : a->index) n += i;
    return n;
  }
  return 0;
}

Atom function_base(const Atom& f) {
  return make_function(f->name, f->deps, std::vector<int>(f->deps.size(), 0));
}

Atom with_index(const Atom& f, std::vector<int> index) {
  return make_function(f->name, f->deps, std::move(index));
}

std::optional<std::size_t> dep_position(const Atom& f, std::string_view var) {
  for (std::size_t i = 0; i < f->deps.size(); ++i) {
    if (f->deps[i] == var) return i;
  }
  return std::nullopt;
}

bool atom_depends_on(const Atom& a, std::string_view var) {
  switch (a->kind) {
    case AtomKind::Symbol:
      return a->name == var;
    case AtomKind::Jet:
      return a->name == var && a->jet.order() == 0;
    case AtomKind::Function:
      return dep_position(a, var).has_value();
    case AtomKind::Exp:
    case AtomKind::Ln: {
      const ExprRep& r = *a->arg;
      auto poly_dep = [&](const Poly& p) {
        for (const auto& t : p.terms()) {
          for (const auto& [atom, e] : t.mono.factors) {
            if (atom_depends_on(atom, var)) return true;
          }
        }
        return false;
      };
      if (poly_dep(r.num)) return true;
      for (const auto& [p, k] : r.den) {
        if (poly_dep(p)) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace kdvsym
