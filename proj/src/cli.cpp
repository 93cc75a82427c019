#include "kdvsym/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kdvsym/detsys.hpp"
#include "kdvsym/parse.hpp"
#include "kdvsym/print.hpp"
#include "kdvsym/verify.hpp"

namespace kdvsym {

using json = nlohmann::ordered_json;

std::map<std::string, Rational> parse_params(const std::string& text) {
  std::map<std::string, Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected name=value in '" + item + "'");
    Rational v;
    if (v.set_str(item.substr(eq + 1), 10) != 0) {
      throw std::invalid_argument("'" + item.substr(eq + 1) + "' is not a rational number");
    }
    v.canonicalize();
    out[item.substr(0, eq)] = v;
  }
  return out;
}

namespace {

/// Input error that carries the offending text for a line/column annotation.
struct SourceError : std::runtime_error {
  SourceError(const std::string& what, const std::string& src, std::size_t pos)
      : std::runtime_error(what), source(src), position(pos) {}
  std::string source;
  std::size_t position;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Blanks '#' comments in place so that error positions still refer to the file.
std::string blank_comments(std::string text) {
  bool comment = false;
  for (char& c : text) {
    if (c == '\n') {
      comment = false;
    } else if (c == '#') {
      comment = true;
    }
    if (comment) c = ' ';
  }
  return text;
}

bool is_file(const std::string& s) {
  std::error_code ec;
  return std::filesystem::is_regular_file(s, ec);
}

std::string params_text(const std::map<std::string, Rational>& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : ",") + k + "=" + v.get_str();
  return s;
}

std::string config_text(const std::string& command, const RunConfig& cfg) {
  std::string lead = cfg.format == "latex" ? "% " : "# ";
  return lead + "kdvsym " + command + "\n" + lead + "seed=" + std::to_string(cfg.seed) +
         " max-order=" + std::to_string(cfg.max_order) + " consequence-order=" + std::to_string(cfg.consequence_order) +
         " cross-consequence=" + (cfg.cross_consequence ? "on" : "off") + " format=" + cfg.format +
         " params=" + params_text(cfg.params) + "\n";
}

json config_json(const std::string& command, const RunConfig& cfg) {
  json p = json::object();
  for (const auto& [k, v] : cfg.params) p[k] = v.get_str();
  return json{{"command", command},
              {"seed", cfg.seed},
              {"max_order", cfg.max_order},
              {"consequence_order", cfg.consequence_order},
              {"cross_consequence", cfg.cross_consequence},
              {"format", cfg.format},
              {"params", p}};
}

Format expr_format(const RunConfig& cfg) { return cfg.format == "latex" ? Format::Latex : Format::Text; }

std::string signature(const Atom& a) {
  std::string s = a->name + "(";
  for (std::size_t i = 0; i < a->deps.size(); ++i) s += (i ? "," : "") + a->deps[i];
  return s + ")";
}

json system_json(const DetSystem& sys) {
  json coeffs = json::object();
  for (const auto& var : {"t", "x", "u", "v"}) {
    auto it = sys.ansatz.field.coeffs.find(var);
    if (it != sys.ansatz.field.coeffs.end()) coeffs[var] = print(it->second);
  }
  json unknowns = json::array();
  for (const auto& u : sys.ansatz.unknowns) unknowns.push_back(signature(u));
  json eqs = json::array();
  for (const auto& e : sys.equations) {
    eqs.push_back(json{{"lhs", print(e.lhs)}, {"anchor", e.anchor}, {"provenance", to_string(e.provenance)}});
  }
  return json{{"name", sys.name},
              {"coefficients", coeffs},
              {"unknowns", unknowns},
              {"constants", sys.ansatz.constants},
              {"equations", eqs}};
}

std::string latex_system(const DetSystem& sys) {
  std::string s;
  for (const auto& var : {"t", "x", "u", "v"}) {
    auto it = sys.ansatz.field.coeffs.find(var);
    if (it == sys.ansatz.field.coeffs.end()) continue;
    s += std::string("% coefficient of \\partial_") + var + ": " + print(it->second, Format::Latex) + "\n";
  }
  s += "\\begin{align}\n";
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    s += "  & " + print_collected(sys.equations[i].lhs, Format::Latex) + " = 0";
    if (i + 1 < sys.equations.size()) s += ", \\\\";
    s += "\n";
  }
  return s + "\\end{align}\n";
}

EvolutionSystem load_system(const std::string& spec, const RunConfig& cfg, Context& ctx) {
  if (is_file(spec)) {
    std::string text = read_file(spec);
    try {
      return parse_system(text, ctx);
    } catch (const ParseError& e) {
      throw SourceError(spec + ": " + e.message(), text, e.position());
    }
  }
  std::string base = spec;
  int variant = 0;
  for (const auto& [suffix, v] : {std::pair<std::string, int>{":potential", 1}, {":augmented", 2}}) {
    if (base.size() > suffix.size() && base.ends_with(suffix)) {
      base.erase(base.size() - suffix.size());
      variant = v;
    }
  }
  auto names = instance_names();
  if (std::find(names.begin(), names.end(), base) == names.end()) {
    throw std::invalid_argument("'" + spec + "' is neither a file nor a named instance");
  }
  EvolutionSystem sys = named_instance(base, cfg.params, ctx);
  if (variant > 0) sys = potential_system(sys, variant == 2, ctx);
  return sys;
}

int cmd_derive(const std::string& target, const RunConfig& cfg, std::ostream& out) {
  DeriveOptions opt{cfg.cross_consequence, cfg.consequence_order, cfg.max_order};
  std::string command = "derive " + target;
  if (auto kind = system_kind_from_string(target)) {
    GeneratedMatch g = generate_and_match(*kind, opt);
    int code = g.report.full_match() ? 0 : 1;
    if (cfg.format == "json") {
      json j{{"config", config_json(command, cfg)},
             {"derived", system_json(g.derivation.system)},
             {"trace", g.derivation.trace},
             {"match", json::parse(match_report_json(g.report))}};
      out << j.dump(2) << "\n";
      return code;
    }
    out << config_text(command, cfg);
    if (cfg.format == "latex") {
      out << latex_system(g.derivation.system);
      out << "% " << (g.report.full_match() ? "MATCH" : "DISCREPANCY") << " against the printed system\n";
      return code;
    }
    out << format_det_system(g.derivation.system) << "\n";
    out << "trace:\n";
    for (const auto& line : g.derivation.trace) out << "  " << line << "\n";
    out << "\n" << format_match_report(g.report);
    return code;
  }
  Context ctx = Context::standard();
  EvolutionSystem sys = load_system(target, cfg, ctx);
  Derivation d = derive_system(sys, opt, ctx);
  if (cfg.format == "json") {
    json j{{"config", config_json(command, cfg)},
           {"target", format_system(d.target)},
           {"derived", system_json(d.system)},
           {"trace", d.trace}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << config_text(command, cfg);
  if (cfg.format == "latex") {
    out << latex_system(d.system);
    return 0;
  }
  out << format_system(d.target) << "\n" << format_det_system(d.system) << "\ntrace:\n";
  for (const auto& line : d.trace) out << "  " << line << "\n";
  return 0;
}

int cmd_check(const std::string& op_spec, const std::string& sys_spec, const RunConfig& cfg, std::ostream& out) {
  Context ctx = Context::standard();
  EvolutionSystem sys = load_system(sys_spec, cfg, ctx);
  for (int i = 0; i <= 9; ++i) {
    std::string c = "C" + std::to_string(i);
    if (!ctx.has(c)) ctx.add_constant(c);
  }
  // numeric parameters leave no symbol behind; the operator may still name them
  for (const auto& [name, value] : cfg.params) {
    if (!ctx.has(name)) ctx.add_parameter(name, sgn(value) != 0);
  }
  std::string op_text = is_file(op_spec) ? blank_comments(read_file(op_spec)) : op_spec;
  VectorField X;
  try {
    X = parse_vector_field(op_text, ctx);
  } catch (const ParseError& e) {
    throw SourceError("operator: " + e.message(), op_text, e.position());
  }
  for (const auto& [name, value] : cfg.params) {
    for (auto& [var, c] : X.coeffs) c = substitute(c, make_symbol(name), Expr(value));
  }
  std::string note;
  bool uses_v = X.coeffs.count("v") > 0;
  for (const auto& [var, c] : X.coeffs) uses_v = uses_v || depends_on(c, "v");
  if (uses_v && !sys.has_dependent("v")) {
    sys = potential_system(sys, true, ctx);
    note = "the operator involves v, so the extended potential system is used";
  }
  Verdict v = check_symmetry(X, sys, ctx, CheckOptions{cfg.seed, cfg.consequence_order, cfg.cross_consequence,
                                                       cfg.max_order});
  OperatorClass k = classify_operator(X);
  int code = v.is_symmetry == ZeroStatus::Zero ? 0 : v.is_symmetry == ZeroStatus::NonZero ? 1 : 3;
  std::string answer = code == 0 ? "yes" : code == 1 ? "no" : "unknown";
  std::string command = "check " + op_spec + " " + sys_spec;
  if (cfg.format == "json") {
    json res = json::array();
    for (const auto& [head, e] : v.residuals) res.push_back(json{{"rule", head}, {"residual", print(e)}});
    json rep = json::array();
    for (const auto& t : v.report) {
      rep.push_back(json{{"rule", t.rule}, {"monomial", print(Expr(Poly::monomial(t.basis)))},
                         {"coefficient", print(t.coefficient)}});
    }
    json j{{"config", config_json(command, cfg)},
           {"system", format_system(sys)},
           {"operator", format_vector_field(X)},
           {"symmetry", answer},
           {"residuals", res},
           {"report", rep},
           {"unresolved", v.unresolved},
           {"classification", json{{"kind", to_string(k.kind)}, {"witness", k.witness}}}};
    if (!note.empty()) j["note"] = note;
    out << j.dump(2) << "\n";
    return code;
  }
  Format f = expr_format(cfg);
  out << config_text(command, cfg);
  if (!note.empty()) out << "note: " << note << "\n";
  out << format_system(sys) << "operator: X = " << format_vector_field(X) << "\n";
  out << "symmetry: " << answer << "\n";
  for (const auto& t : v.report) {
    out << "  residual of " << t.rule << ": coefficient of " << print(Expr(Poly::monomial(t.basis)), f) << " is "
        << print(t.coefficient, f) << "\n";
  }
  if (!v.unresolved.empty()) out << "  unresolved: " << v.unresolved << "\n";
  out << "classification: " << to_string(k.kind);
  if (!k.witness.empty()) out << " (v enters the " << k.witness << " coefficient)";
  out << "\n";
  return code;
}

int cmd_compare(int theorem, const RunConfig& cfg, std::ostream& out) {
  std::string command = "compare " + std::to_string(theorem);
  if (theorem == 3) {
    SuiteOptions opt;
    if (cfg.params.count("lbd")) opt.lbd = cfg.params.at("lbd");
    if (cfg.params.count("mu")) opt.mu = cfg.params.at("mu");
    opt.seed = cfg.seed;
    SuiteReport r = paper_example_suite(opt);
    int code = r.all_pass() ? 0 : 1;
    if (cfg.format == "json") {
      json steps = json::array();
      for (const auto& s : r.steps) {
        steps.push_back(json{{"id", s.id}, {"title", s.title}, {"pass", s.pass}, {"detail", s.detail}});
      }
      json j{{"config", config_json(command, cfg)}, {"steps", steps}, {"inequivalence_witness", r.all_pass()}};
      out << j.dump(2) << "\n";
      return code;
    }
    out << config_text(command, cfg) << format_suite(r);
    out << (r.all_pass() ? "inequivalence witness found\n" : "inequivalence witness not confirmed\n");
    return code;
  }
  if (theorem != 1 && theorem != 2) throw std::invalid_argument("theorem must be 1, 2 or 3");
  std::vector<ProofStep> steps = theorem_steps(theorem, cfg.seed);
  std::size_t failed = 0;
  for (const auto& s : steps) failed += s.verdict.zero() ? 0 : 1;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& s : steps) {
      json e{{"id", s.id}, {"claim", s.claim}, {"status", to_string(s.verdict.status)}, {"detail", s.verdict.detail}};
      if (!s.verdict.factor.is_zero()) e["factor"] = print(s.verdict.factor);
      if (!s.verdict.zero()) e["difference"] = print(s.verdict.difference);
      arr.push_back(e);
    }
    json j{{"config", config_json(command, cfg)}, {"steps", arr}, {"all_zero", failed == 0}};
    out << j.dump(2) << "\n";
    return failed == 0 ? 0 : 1;
  }
  Format f = expr_format(cfg);
  out << config_text(command, cfg);
  for (const auto& s : steps) {
    out << "[" << to_string(s.verdict.status) << "] " << s.id << "  " << s.claim << "\n      " << s.verdict.detail
        << "\n";
    if (!s.verdict.zero()) out << "      difference: " << print(s.verdict.difference, f) << "\n";
  }
  if (failed == 0) {
    out << "all " << steps.size() << " steps verified\n";
  } else {
    out << failed << " of " << steps.size() << " steps not verified\n";
  }
  return failed == 0 ? 0 : 1;
}

std::string annotate(const SourceError& e) {
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i < e.position && i < e.source.size(); ++i) {
    if (e.source[i] == '\n') {
      ++line;
      col = 1;
      start = i + 1;
    } else {
      ++col;
    }
  }
  std::size_t end = e.source.find('\n', start);
  std::string text = e.source.substr(start, end == std::string::npos ? std::string::npos : end - start);
  return std::string("error: ") + e.what() + " (line " + std::to_string(line) + ", column " + std::to_string(col) +
         ")\n  " + text + "\n  " + std::string(col - 1, ' ') + "^\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Determining equations for Lie and potential symmetries of u_t = [A u_xx + B u_x + C]_x", "kdvsym"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string params;
  bool latex = false;
  app.add_option("--seed", cfg.seed, "seed for numeric zero probes")->envname("KDVSYM_SEED");
  app.add_option("--max-order", cfg.max_order, "highest u-derivative in the jet space")
      ->envname("KDVSYM_MAX_ORDER")
      ->check(CLI::Range(3, 12));
  app.add_option("--consequence-order", cfg.consequence_order, "order of differential consequences")
      ->envname("KDVSYM_CONSEQUENCE_ORDER")
      ->check(CLI::Range(0, 4));
  app.add_flag("--cross-consequence", cfg.cross_consequence, "keep the consequence v_xt = u_t")
      ->envname("KDVSYM_CROSS_CONSEQUENCE");
  app.add_option("--format", cfg.format, "text, latex or json")
      ->envname("KDVSYM_FORMAT")
      ->check(CLI::IsMember({"text", "latex", "json"}));
  app.add_flag("--latex", latex, "same as --format latex");
  app.add_option("--params", params, "instance parameters, e.g. lbd=9,mu=3")->envname("KDVSYM_PARAMS");

  std::string derive_target;
  auto* derive = app.add_subcommand("derive", "derive a determining system (scalar, potential, augmented, file or instance)");
  derive->add_option("target", derive_target)->required();
  derive->fallthrough();

  std::string op_spec;
  std::string sys_spec;
  auto* check = app.add_subcommand("check", "check whether an operator is a symmetry of a system");
  check->add_option("operator", op_spec, "operator text or file")->required();
  check->add_option("system", sys_spec, "named instance (name[:potential|:augmented]) or system file")->required();
  check->fallthrough();

  int theorem = 0;
  auto* compare = app.add_subcommand("compare", "replay the proof steps of theorem 1, 2 or 3");
  compare->add_option("theorem", theorem)->required()->check(CLI::Range(1, 3));
  compare->fallthrough();

  auto* list = app.add_subcommand("instances", "list the named instances");
  list->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (latex) cfg.format = "latex";

  try {
    cfg.params = parse_params(params);
    if (*derive) return cmd_derive(derive_target, cfg, out);
    if (*check) return cmd_check(op_spec, sys_spec, cfg, out);
    if (*compare) return cmd_compare(theorem, cfg, out);
    for (const auto& n : instance_names()) out << n << "\n";
    return 0;
  } catch (const SourceError& e) {
    err << annotate(e);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace kdvsym
