#include "kdvsym/detsys.hpp"

#include <algorithm>

#include "json.hpp"
#include "kdvsym/calculus.hpp"
#include "kdvsym/parse.hpp"
#include "kdvsym/print.hpp"

namespace kdvsym {

namespace {

void declare(Context& ctx, const std::string& name, const std::vector<std::string>& deps, bool nonzero = false) {
  if (ctx.function(name)) {
    ctx.set_function(name, deps);
  } else if (!ctx.has(name)) {
    ctx.add_function(name, deps, nonzero);
  } else {
    throw ContextError("'" + name + "' is registered but is not a function");
  }
}

void declare_structure(Context& ctx) {
  declare(ctx, "A", {"u"}, true);
  declare(ctx, "B", {"u"});
  declare(ctx, "C", {"u"});
}

Expr fn(const std::string& name, std::vector<std::string> deps) {
  return Expr::atom(make_function(name, std::move(deps)));
}

DetEquation paper_eq(const std::string& text, const std::string& anchor, const Context& ctx) {
  return DetEquation{parse(text, ctx), anchor, Provenance::Paper};
}

Expr flux_of_class(const Context& ctx) { return parse("A(u)*u_xx+B(u)*u_x+C(u)", ctx); }

std::vector<std::string> ordered_dependents(const EvolutionSystem& sys) {
  std::vector<std::string> deps = sys.dependents();
  std::sort(deps.begin(), deps.end(), [](const std::string& a, const std::string& b) {
    auto rank = [](const std::string& s) { return s == "u" ? 0 : s == "v" ? 1 : 2; };
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    return a < b;
  });
  return deps;
}

}  // namespace

std::string to_string(SystemKind k) {
  switch (k) {
    case SystemKind::Scalar:
      return "scalar";
    case SystemKind::Potential:
      return "potential";
    case SystemKind::Augmented:
      return "augmented";
  }
  return "";
}

std::optional<SystemKind> system_kind_from_string(std::string_view s) {
  if (s == "scalar") return SystemKind::Scalar;
  if (s == "potential") return SystemKind::Potential;
  if (s == "augmented") return SystemKind::Augmented;
  return std::nullopt;
}

Context paper_context(SystemKind k) {
  Context c = Context::standard();
  c.add_parameter("lbd", true);
  c.add_parameter("mu", true);
  c.add_parameter("lbd1", true);
  c.add_parameter("lbd2");
  for (const auto& n : {"C0", "C1", "C2", "C3"}) c.add_constant(n);
  declare_structure(c);
  declare(c, "xi0", {"t"});
  declare(c, "xi1", {"t", "x"});
  switch (k) {
    case SystemKind::Scalar:
      declare(c, "alpha", {"t", "x"});
      declare(c, "beta", {"t", "x"});
      break;
    case SystemKind::Potential:
      declare(c, "alpha", {"t", "x"});
      declare(c, "gamma", {"t", "x"});
      break;
    case SystemKind::Augmented:
      declare(c, "alpha", {"t", "x", "v"});
      declare(c, "beta", {"t", "x", "v"});
      declare(c, "eta2", {"t", "x", "v"});
      break;
  }
  return c;
}

DetSystem paper_scalar_system(Context& ctx) {
  declare_structure(ctx);
  declare(ctx, "xi0", {"t"});
  declare(ctx, "xi1", {"t", "x"});
  declare(ctx, "alpha", {"t", "x"});
  declare(ctx, "beta", {"t", "x"});
  DetSystem s;
  s.name = "scalar";
  s.equations = {
      paper_eq("(alpha_x+xi1_xx)*A'(u)", "q31", ctx),
      paper_eq("(alpha*u+beta)*A'(u)-(3*xi1_x-xi0_t)*A(u)", "q32", ctx),
      paper_eq("(alpha*u+beta)*B'(u)-(2*xi1_x-xi0_t)*B(u)+3*alpha_x*A(u)", "q33", ctx),
      paper_eq("(alpha_x+xi1_xx)*C'(u)-(alpha_xx+xi1_xxx)*B(u)+(alpha_xxx+xi1_xxxx)*A(u)-alpha_t-xi1_tx", "q34",
               ctx),
      paper_eq("(alpha_x*u+beta_x)*C'(u)+(alpha_xx*u+beta_xx)*B(u)+(alpha_xxx*u+beta_xxx)*A(u)-alpha_t*u-beta_t",
               "q35", ctx),
  };
  s.ansatz.field.set("t", fn("xi0", {"t"}));
  s.ansatz.field.set("x", fn("xi1", {"t", "x"}));
  s.ansatz.field.set("u", parse("alpha*u+beta", ctx));
  s.ansatz.unknowns = {make_function("xi0", {"t"}), make_function("xi1", {"t", "x"}),
                       make_function("alpha", {"t", "x"}), make_function("beta", {"t", "x"})};
  return s;
}

DetSystem paper_potential_system(Context& ctx) {
  declare_structure(ctx);
  declare(ctx, "xi0", {"t"});
  declare(ctx, "xi1", {"t", "x"});
  declare(ctx, "alpha", {"t", "x"});
  declare(ctx, "gamma", {"t", "x"});
  if (!ctx.has("C2")) ctx.add_constant("C2");
  DetSystem s;
  s.name = "potential";
  s.equations = {
      paper_eq("(alpha*u+gamma_x)*A'(u)-(3*xi1_x-xi0_t)*A(u)", "q41", ctx),
      paper_eq("(alpha*u+gamma_x)*B'(u)-(2*xi1_x-xi0_t)*B(u)+3*alpha_x*A(u)", "q42", ctx),
      // eta2 = C2*v + gamma, so eta2_t = gamma_t
      paper_eq("(alpha*u+gamma_x)*C'(u)-(C2-xi0_t)*C(u)+(alpha_x*u+gamma_xx)*B(u)+(alpha_xx*u+gamma_xxx)*A(u)"
               "+xi1_t*u-diff(C2*v+gamma,t)",
               "q43", ctx),
      paper_eq("alpha-C2+xi1_x", "q5", ctx),
  };
  s.ansatz.field.set("t", fn("xi0", {"t"}));
  s.ansatz.field.set("x", fn("xi1", {"t", "x"}));
  s.ansatz.field.set("u", parse("alpha*u+gamma_x", ctx));
  s.ansatz.field.set("v", parse("C2*v+gamma", ctx));
  s.ansatz.unknowns = {make_function("xi0", {"t"}), make_function("xi1", {"t", "x"}),
                       make_function("alpha", {"t", "x"}), make_function("gamma", {"t", "x"})};
  s.ansatz.constants = {"C2"};
  return s;
}

DetSystem paper_augmented_system(Context& ctx) {
  declare_structure(ctx);
  declare(ctx, "xi0", {"t"});
  declare(ctx, "xi1", {"t", "x"});
  declare(ctx, "alpha", {"t", "x", "v"});
  declare(ctx, "beta", {"t", "x", "v"});
  declare(ctx, "eta2", {"t", "x", "v"});
  DetSystem s;
  s.name = "augmented";
  s.equations = {
      paper_eq("(alpha*u+beta)*A'(u)-(3*xi1_x-xi0_t)*A(u)", "q81", ctx),
      paper_eq("(alpha*u+beta)*B'(u)-(2*xi1_x-xi0_t)*B(u)+3*(alpha_v*u+alpha_x)*A(u)", "q82", ctx),
      paper_eq("(alpha*u+beta)*C'(u)-(alpha+xi1_x-xi0_t)*C(u)+(alpha_v*u^2+(2*alpha_x+xi1_xx)*u+beta_x)*B(u)"
               "+(alpha_vv*u^3+3*alpha_xv*u^2+(3*alpha_xx+2*xi1_xxx)*u+beta_xx)*A(u)+xi1_t*u-eta2_t",
               "q83", ctx),
      paper_eq("eta2_v-alpha-xi1_x", "q84a", ctx),
      paper_eq("eta2_x-beta", "q84b", ctx),
  };
  s.ansatz.field.set("t", fn("xi0", {"t"}));
  s.ansatz.field.set("x", fn("xi1", {"t", "x"}));
  s.ansatz.field.set("u", parse("alpha*u+beta", ctx));
  s.ansatz.field.set("v", fn("eta2", {"t", "x", "v"}));
  s.ansatz.unknowns = {make_function("xi0", {"t"}), make_function("xi1", {"t", "x"}),
                       make_function("alpha", {"t", "x", "v"}), make_function("beta", {"t", "x", "v"}),
                       make_function("eta2", {"t", "x", "v"})};
  return s;
}

DetSystem paper_system(SystemKind k, Context& ctx) {
  switch (k) {
    case SystemKind::Scalar:
      return paper_scalar_system(ctx);
    case SystemKind::Potential:
      return paper_potential_system(ctx);
    case SystemKind::Augmented:
      return paper_augmented_system(ctx);
  }
  throw std::invalid_argument("unknown system kind");
}

EvolutionSystem class_system(SystemKind k, Context& ctx) {
  declare_structure(ctx);
  Expr flux = flux_of_class(ctx);
  EvolutionSystem s;
  s.name = "class";
  s.flux = flux;
  s.rules.push_back(Rule{make_jet("u", {1, 0}), total_derivative(flux, 'x', JetSpace::standard()), "given"});
  if (k == SystemKind::Scalar) return s;
  return potential_system(s, k == SystemKind::Augmented, ctx);
}

EvolutionSystem potential_system(const EvolutionSystem& scalar, bool augmented, Context& ctx) {
  if (scalar.rules.size() != 1 || !atom_equal(scalar.rules[0].head, make_jet("u", {1, 0}))) {
    throw JetError("a potential system needs a single equation u_t = ...");
  }
  if (!scalar.flux) throw JetError("the equation " + scalar.name + " is not given in conserved form");
  if (!ctx.is_dependent("v")) ctx.add_dependent("v");
  EvolutionSystem p;
  p.name = scalar.name + (augmented ? "-potential-extended" : "-potential");
  p.params = scalar.params;
  p.flux = scalar.flux;
  p.rules.push_back(Rule{make_jet("v", {0, 1}), Expr::atom(make_jet("u")), "given"});
  p.rules.push_back(Rule{make_jet("v", {1, 0}), *scalar.flux, "given"});
  if (augmented) p.rules.push_back(Rule{make_jet("v", {0, 2}), Expr::atom(make_jet("u", {0, 1})), "given"});
  return p;
}

Derivation derive_system(const EvolutionSystem& sys, const DeriveOptions& opt, Context& ctx) {
  std::vector<std::string> deps = ordered_dependents(sys);
  std::vector<std::string> names{"xi0", "xi1"};
  for (std::size_t i = 0; i < deps.size(); ++i) {
    names.push_back(deps.size() == 1 ? "eta" : deps[i] == "u" ? "eta1" : deps[i] == "v" ? "eta2" : "eta" + deps[i]);
  }
  std::vector<std::string> reserved = names;
  for (const auto& n : {"alpha", "beta", "gamma", "C2"}) reserved.emplace_back(n);
  for (const auto& n : reserved) {
    bool param = std::find(sys.params.begin(), sys.params.end(), n) != sys.params.end();
    if (ctx.has(n) && !param) ctx.remove(n);
  }
  std::vector<std::string> base{"t", "x"};
  base.insert(base.end(), deps.begin(), deps.end());
  Ansatz an;
  for (std::size_t i = 0; i < names.size(); ++i) {
    ctx.add_function(names[i], base);
    Atom f = make_function(names[i], base);
    an.unknowns.push_back(f);
    an.field.set(i == 0 ? "t" : i == 1 ? "x" : deps[i - 2], Expr::atom(f));
  }
  SolutionManifold m = consequences(sys, opt.consequence_order, opt.cross_consequence, JetSpace::with_max(opt.max_order));
  Derivation d;
  d.target = m.system();
  for (const auto& r : m.rules()) {
    d.trace.push_back("rule " + print_atom(r.head) + " = " + print(r.rhs) + "  (" + r.origin + ")");
  }
  std::vector<Expr> raw;
  for (const auto& res : invariance_residual(an.field, m)) {
    for (auto& t : split_residual(res)) raw.push_back(std::move(t.coefficient));
  }
  d.raw_equations = raw.size();
  d.trace.push_back("splitting gives " + std::to_string(raw.size()) + " raw equations");
  AnsatzReduction red = reduce_ansatz(raw, an, ctx);
  for (auto& s : red.steps) d.trace.push_back(std::move(s));
  d.system.name = sys.name;
  d.system.ansatz = red.ansatz;
  for (const auto& e : red.equations) d.system.equations.push_back(DetEquation{e, "", Provenance::Generated});
  return d;
}

// ---------------------------------------------------------------- matching

std::string to_string(MatchStatus s) {
  switch (s) {
    case MatchStatus::Matched:
      return "matched";
    case MatchStatus::Differs:
      return "differs";
    case MatchStatus::MissingInGenerated:
      return "missing-in-generated";
    case MatchStatus::ExtraInGenerated:
      return "extra-in-generated";
  }
  return "";
}

bool MatchReport::full_match() const {
  return std::all_of(entries.begin(), entries.end(), [](const MatchEntry& e) { return e.status == MatchStatus::Matched; });
}

MatchReport match_systems(const DetSystem& paper, const DetSystem& generated,
                          const std::vector<std::pair<Atom, Expr>>& alignment, const Context& ctx) {
  MatchReport r;
  r.which = paper.name;
  for (const auto& [a, e] : alignment) r.alignment.push_back(print_atom(a) + " -> " + print(e));
  std::vector<Expr> gen;
  for (const auto& eq : generated.equations) {
    Expr e = eq.lhs;
    for (const auto& [a, rep] : alignment) e = substitute(e, a, rep);
    e = simplify_equation(e, ctx);
    if (!e.is_zero()) gen.push_back(e);
  }
  std::vector<Expr> pap;
  for (const auto& eq : paper.equations) pap.push_back(simplify_equation(eq.lhs, ctx));
  ConsequenceSpan from_generated(gen, ctx);
  ConsequenceSpan from_paper(pap, ctx);
  std::vector<char> used(gen.size(), 0);
  for (std::size_t i = 0; i < pap.size(); ++i) {
    MatchEntry m{MatchStatus::Matched, paper.equations[i].anchor, pap[i], Expr(), Expr(), ""};
    auto same = std::find(gen.begin(), gen.end(), pap[i]);
    if (same != gen.end()) {
      std::size_t k = static_cast<std::size_t>(same - gen.begin());
      used[k] = 1;
      m.generated = gen[k];
      m.how = "identical to generated #" + std::to_string(k + 1);
      r.entries.push_back(std::move(m));
      continue;
    }
    Implication imp = from_generated.test(pap[i]);
    if (imp.implied) {
      m.how = "implied by the generated system";
      r.entries.push_back(std::move(m));
      continue;
    }
    m.diff = imp.remainder;
    const Monomial& lead = pap[i].num().terms().front().mono;
    for (const auto& g : gen) {
      if (!g.num().is_zero() && g.num().terms().front().mono == lead) {
        m.generated = g;
        break;
      }
    }
    m.status = m.generated.is_zero() ? MatchStatus::MissingInGenerated : MatchStatus::Differs;
    m.how = "not implied by the generated system";
    r.entries.push_back(std::move(m));
  }
  for (std::size_t k = 0; k < gen.size(); ++k) {
    if (used[k]) continue;
    MatchEntry m{MatchStatus::Matched, "generated #" + std::to_string(k + 1), Expr(), gen[k], Expr(), ""};
    Implication imp = from_paper.test(gen[k]);
    if (imp.implied) {
      m.how = "implied by the paper system";
    } else {
      m.status = MatchStatus::ExtraInGenerated;
      m.diff = imp.remainder;
      m.how = "not implied by the paper system";
    }
    r.entries.push_back(std::move(m));
  }
  return r;
}

GeneratedMatch generate_and_match(SystemKind k, const DeriveOptions& opt) {
  Context ctx = Context::standard();
  EvolutionSystem sys = class_system(k, ctx);
  sys.name = to_string(k);
  DeriveOptions o = opt;
  if (k == SystemKind::Augmented) o.consequence_order = std::max(1, o.consequence_order);
  if (k != SystemKind::Augmented) o.cross_consequence = false;
  GeneratedMatch gm;
  gm.derivation = derive_system(sys, o, ctx);
  Context pctx = paper_context(k);
  gm.paper = paper_system(k, pctx);
  std::vector<std::pair<Atom, Expr>> alignment;
  if (k == SystemKind::Potential) {
    alignment.emplace_back(make_function("beta", {"t", "x"}), differentiate(fn("gamma", {"t", "x"}), "x"));
  }
  gm.report = match_systems(gm.paper, gm.derivation.system, alignment, pctx);
  gm.report.which = to_string(k);
  return gm;
}

std::string format_match_report(const MatchReport& r) {
  std::string s = "[match " + r.which + "]\n";
  for (const auto& a : r.alignment) s += "alignment: " + a + "\n";
  for (const auto& e : r.entries) {
    s += e.anchor + ": " + to_string(e.status) + " (" + e.how + ")\n";
    if (!e.paper.is_zero()) s += "  paper:     " + print_collected(e.paper) + " = 0\n";
    if (!e.generated.is_zero() && e.status != MatchStatus::Matched) {
      s += "  generated: " + print_collected(e.generated) + " = 0\n";
    }
    if (!e.diff.is_zero()) s += "  remainder: " + print_collected(e.diff) + "\n";
  }
  std::size_t bad = std::count_if(r.entries.begin(), r.entries.end(),
                                  [](const MatchEntry& e) { return e.status != MatchStatus::Matched; });
  s += bad == 0 ? std::string("MATCH\n") : "DISCREPANCY (" + std::to_string(bad) + (bad == 1 ? " entry)\n" : " entries)\n");
  return s;
}

std::string match_report_json(const MatchReport& r, int indent) {
  nlohmann::ordered_json j;
  j["which"] = r.which;
  j["full_match"] = r.full_match();
  j["alignment"] = r.alignment;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json x;
    x["anchor"] = e.anchor;
    x["status"] = to_string(e.status);
    x["how"] = e.how;
    x["paper"] = e.paper.is_zero() ? nlohmann::ordered_json() : nlohmann::ordered_json(print(e.paper));
    x["generated"] = e.generated.is_zero() ? nlohmann::ordered_json() : nlohmann::ordered_json(print(e.generated));
    x["remainder"] = e.diff.is_zero() ? nlohmann::ordered_json() : nlohmann::ordered_json(print(e.diff));
    j["entries"].push_back(std::move(x));
  }
  return j.dump(indent);
}

}  // namespace kdvsym
