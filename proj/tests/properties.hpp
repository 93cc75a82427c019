#pragma once

// Randomized kernel properties, shared by the property tests and the
// acceptance binary.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kdvsym/calculus.hpp"
#include "kdvsym/detsys.hpp"
#include "kdvsym/eval.hpp"
#include "kdvsym/jet.hpp"
#include "kdvsym/print.hpp"
#include "kdvsym/symmetry.hpp"

namespace props {

using namespace kdvsym;

struct Outcome {
  std::string name;
  int cases = 0;
  int skipped = 0;
  int failures = 0;
  std::string first_failure;
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  Rational small() {
    Rational r(pick(9) - 4, pick(3) + 1);
    r.canonicalize();
    return r;
  }
  Rational nonzero() { return random_rational(rng_); }

  /// Atoms that carry no jet coordinate.
  Atom plain_atom() {
    switch (pick(8)) {
      case 0: return make_symbol("t");
      case 1: return make_symbol("x");
      case 2: return make_symbol("lbd");
      case 3: return make_symbol("mu");
      case 4: return make_function("xi1", {"t", "x"}, {pick(2), pick(2)});
      case 5: return make_function("alpha", {"t", "x"}, {pick(2), 0});
      case 6: return make_function("f", {"t"}, {pick(2)});
      default: return make_symbol("t");
    }
  }

  Atom jet_atom() {
    switch (pick(7)) {
      case 0: return make_jet("u");
      case 1: return make_jet("u", {0, 1});
      case 2: return make_jet("u", {0, 2});
      case 3: return make_jet("u", {1, 0});
      case 4: return make_jet("v");
      case 5: return make_jet("v", {0, 1});
      default: return make_jet("u", {0, pick(4)});
    }
  }

  Node leaf(bool with_jets) {
    int k = pick(10);
    if (k < 2) return Node::number(small());
    if (with_jets && k < 6) return Node::atom(jet_atom());
    if (with_jets && k == 6) return Node::atom(make_function("A", {"u"}, {pick(3)}));
    return Node::atom(plain_atom());
  }

  /// Random raw tree. Exponentials get arguments linear in one variable so
  /// that numeric evaluation stays exact.
  Node tree(int depth, bool with_jets = true, bool with_transcendental = true) {
    if (depth == 0) return leaf(with_jets);
    switch (pick(with_transcendental ? 7 : 5)) {
      case 0:
      case 1: {
        std::vector<Node> terms;
        for (int i = 0, n = 2 + pick(2); i < n; ++i) terms.push_back(tree(depth - 1, with_jets, with_transcendental));
        return Node::sum(terms);
      }
      case 2:
      case 3: {
        std::vector<Node> factors;
        for (int i = 0, n = 2 + pick(2); i < n; ++i) factors.push_back(tree(depth - 1, with_jets, with_transcendental));
        return Node::product(factors);
      }
      case 4:
        return Node::power(tree(depth - 1, with_jets, with_transcendental), pick(5) - 1);
      case 5: {
        const char* vars[] = {"t", "x", "v"};
        int w = pick(with_jets ? 3 : 2);
        Node var = w == 2 ? Node::atom(make_jet("v")) : Node::atom(make_symbol(vars[w]));
        return Node::exp(Node::number(small()) * var);
      }
      default:
        return Node::ln(Node::atom(with_jets ? make_jet("u") : make_symbol("lbd")));
    }
  }

  Bindings bindings(const Expr& e, const Node* n = nullptr) {
    Bindings b;
    b.seed = rng_();
    auto bind = [&](const Atom& a) {
      if (a->kind == AtomKind::Exp || a->kind == AtomKind::Ln) return;
      if (!b.values.count(a)) b.set(a, nonzero());
    };
    for (const auto& a : atoms_of(e, true)) bind(a);
    if (n) collect(*n, bind);
    // u > 0 so that ln(u) is defined
    Atom u = make_jet("u");
    Rational r = nonzero();
    b.set(u, r < 0 ? Rational(-r) : r);
    return b;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  static void collect(const Node& n, const std::function<void(const Atom&)>& f) {
    if (n.kind() == Node::Kind::Atom) f(n.atom_ref());
    if (n.kind() == Node::Kind::Number) return;
    if (n.kind() == Node::Kind::Atom) return;
    for (const auto& c : n.children()) collect(c, f);
  }

  std::mt19937_64 rng_;
};

inline Context context() {
  Context c = Context::standard();
  c.add_parameter("lbd", true);
  c.add_parameter("mu");
  c.add_function("A", {"u"});
  c.add_function("xi1", {"t", "x"});
  c.add_function("alpha", {"t", "x"});
  c.add_function("f", {"t"});
  return c;
}

/// Runs body until `cases` non-skipped cases are done; body returns an empty
/// string on success, "skip" to skip, or a description of the failure.
inline Outcome run(const std::string& name, int cases, const std::function<std::string()>& body) {
  Outcome o{name};
  while (o.cases < cases && o.skipped < 20 * cases) {
    std::string r;
    try {
      r = body();
    } catch (const DivisionByZero&) {
      r = "skip";
    } catch (const EvalError&) {
      r = "skip";
    } catch (const std::exception& e) {
      r = std::string("exception: ") + e.what();
    }
    if (r == "skip") {
      ++o.skipped;
      continue;
    }
    ++o.cases;
    if (!r.empty()) {
      if (o.failures == 0) o.first_failure = r;
      ++o.failures;
    }
  }
  return o;
}

inline Outcome normalize_idempotent(int cases, std::uint64_t seed) {
  Gen g(seed);
  return run("normalize idempotence", cases, [&]() -> std::string {
    Node n = g.tree(3);
    Expr e = normalize(n);
    Expr again = normalize(to_node(e));
    return again == e ? "" : print(e) + " renormalizes to " + print(again);
  });
}

inline Outcome total_derivatives_commute(int cases, std::uint64_t seed) {
  Gen g(seed);
  const JetSpace js = JetSpace::with_max(8);
  return run("D_t D_x = D_x D_t", cases, [&]() -> std::string {
    Expr e = normalize(g.tree(3));
    Expr tx = total_derivative(total_derivative(e, 'x', js), 't', js);
    Expr xt = total_derivative(total_derivative(e, 't', js), 'x', js);
    return tx == xt ? "" : "on " + print(e);
  });
}

inline Outcome eval_consistent(int cases, std::uint64_t seed) {
  Gen g(seed);
  return run("eval(normalize(e)) = eval(e)", cases, [&]() -> std::string {
    Node n = g.tree(3);
    Expr e = normalize(n);
    Bindings b = g.bindings(e, &n);
    Rational raw = eval_numeric(n, b);
    Rational canon = eval_numeric(e, b);
    return raw == canon ? "" : print(e) + ": " + raw.get_str() + " vs " + canon.get_str();
  });
}

/// Scalar, potential and augmented systems of the named instances.
inline std::vector<EvolutionSystem> corpus(Context& ctx) {
  std::vector<EvolutionSystem> out;
  std::vector<std::pair<std::string, std::map<std::string, Rational>>> names{
      {"kdv", {}},         {"mkdv", {}},   {"K(m,1)", {{"m", 4}}},        {"kdv-burgers", {}},
      {"gen-kdv-burgers", {{"m", 3}}}, {"paper-example", {}}, {"K(m,n)-template", {{"m", 2}, {"n", 2}}}};
  for (const auto& [name, params] : names) {
    EvolutionSystem s = named_instance(name, params, ctx);
    out.push_back(s);
    out.push_back(potential_system(s, false, ctx));
    out.push_back(potential_system(s, true, ctx));
  }
  return out;
}

inline Outcome manifold_reduce_properties(int cases, std::uint64_t seed) {
  Gen g(seed);
  Context ctx = context();
  std::vector<EvolutionSystem> systems = corpus(ctx);
  std::vector<SolutionManifold> forward;
  std::vector<SolutionManifold> backward;
  const JetSpace js = JetSpace::with_max(8);
  for (const auto& s : systems) {
    SolutionManifold m = consequences(s, 1, false, js);
    forward.push_back(m);
    EvolutionSystem rev = m.system();
    std::reverse(rev.rules.begin(), rev.rules.end());
    backward.emplace_back(rev, js);
  }
  return run("manifold_reduce idempotence and rule order", cases, [&]() -> std::string {
    std::size_t k = g.pick(static_cast<int>(systems.size()));
    Expr e = normalize(g.tree(3, true, false));
    if (!systems[k].has_dependent("v") && depends_on(e, "v")) return "skip";
    Expr once = manifold_reduce(e, forward[k]);
    if (manifold_reduce(once, forward[k]) != once) return systems[k].name + ": not idempotent on " + print(e);
    if (manifold_reduce(e, backward[k]) != once) return systems[k].name + ": rule order matters on " + print(e);
    return "";
  });
}

inline Outcome split_round_trip(int cases, std::uint64_t seed) {
  Gen g(seed);
  return run("split_residual round trip", cases, [&]() -> std::string {
    Expr r;
    for (int i = 0, n = 1 + g.pick(5); i < n; ++i) {
      Expr coeff = normalize(g.tree(2, false, true));
      Expr mono = 1;
      for (int j = 0, d = g.pick(4); j < d; ++j) mono *= Expr::atom(g.jet_atom());
      r += coeff * mono;
    }
    Expr back;
    for (const auto& t : split_residual(r)) back += Expr(Poly::monomial(t.basis)) * t.coefficient;
    return back == r ? "" : "on " + print(r);
  });
}

inline std::vector<Outcome> all(int cases, std::uint64_t seed) {
  return {normalize_idempotent(cases, seed), total_derivatives_commute(cases, seed + 1),
          eval_consistent(cases, seed + 2), manifold_reduce_properties(cases, seed + 3),
          split_round_trip(cases, seed + 4)};
}

}  // namespace props
