#include <stdexcept>

#include "kdvsym/detsys.hpp"
#include "kdvsym/parse.hpp"
#include "kdvsym/print.hpp"

namespace kdvsym {

namespace {

/// Value of a named parameter as an expression: the given rational, or the
/// symbol itself (registered as a parameter) when it is left open.
Expr parameter(const std::string& name, const std::map<std::string, Rational>& params, Context& ctx,
               std::vector<std::string>& open, bool nonzero = false) {
  auto it = params.find(name);
  if (it != params.end()) {
    if (nonzero && sgn(it->second) == 0) throw std::invalid_argument(name + " must be nonzero");
    return Expr(it->second);
  }
  if (!ctx.has(name)) ctx.add_parameter(name, nonzero);
  if (nonzero) ctx.assume_nonzero(name);
  open.push_back(name);
  return Expr::symbol(name);
}

int integer_parameter(const std::string& name, const std::map<std::string, Rational>& params) {
  auto it = params.find(name);
  if (it == params.end()) throw std::invalid_argument("the family needs an integer value for " + name);
  if (it->second.get_den() != 1 || !it->second.get_num().fits_sint_p()) {
    throw std::invalid_argument(name + " must be an integer");
  }
  return static_cast<int>(it->second.get_num().get_si());
}

std::map<std::string, Rational> canonical_names(const std::map<std::string, Rational>& params) {
  std::map<std::string, Rational> out;
  for (const auto& [k, v] : params) {
    std::string key = k == "lambda" ? "lbd" : k;
    if (key != "lbd" && key != "mu" && key != "m" && key != "n") {
      throw std::invalid_argument("unknown parameter '" + k + "'");
    }
    out[key] = v;
  }
  return out;
}

EvolutionSystem conserved(std::string name, const Expr& flux, std::vector<std::string> params) {
  EvolutionSystem s;
  s.name = std::move(name);
  s.params = std::move(params);
  s.flux = flux;
  s.rules.push_back(Rule{make_jet("u", {1, 0}), total_derivative(flux, 'x', JetSpace::standard()), "given"});
  return s;
}

Expr class_flux(const Expr& A, const Expr& B, const Expr& C) {
  Expr ux = Expr::atom(make_jet("u", {0, 1}));
  Expr uxx = Expr::atom(make_jet("u", {0, 2}));
  return A * uxx + B * ux + C;
}

}  // namespace

std::vector<std::string> instance_names() {
  return {"kdv", "mkdv", "K(m,1)", "K(m,n)", "K(m,n)-template", "kdv-burgers", "gen-kdv-burgers", "paper-example"};
}

EvolutionSystem named_instance(const std::string& name, const std::map<std::string, Rational>& given, Context& ctx) {
  std::map<std::string, Rational> params = canonical_names(given);
  std::vector<std::string> open;
  Expr u = Expr::atom(make_jet("u"));
  if (name == "kdv") return conserved(name, class_flux(1, 0, u.pow(2)), open);
  if (name == "mkdv") return conserved(name, class_flux(1, 0, u.pow(3)), open);
  if (name == "K(m,1)") {
    int m = integer_parameter("m", params);
    return conserved(name, class_flux(1, 0, u.pow(m)), open);
  }
  if (name == "K(m,n)" || name == "K(m,n)-template") {
    int n = integer_parameter("n", params);
    if (n == 0) throw std::invalid_argument("n must be nonzero");
    if (name == "K(m,n)") {
      // u_t + (u^n)_xxx + (u^n)_x = 0 as printed; the flux -(u^n)_xx - u^n
      // carries u_x^2, so this reading lies outside the A, B, C template
      const JetSpace space = JetSpace::standard();
      Expr un = u.pow(n);
      Expr flux = -total_derivative(total_derivative(un, 'x', space), 'x', space) - un;
      return conserved(name, flux, open);
    }
    int m = integer_parameter("m", params);
    return conserved(name, class_flux(-u.pow(n), 0, -u.pow(m)), open);
  }
  if (name == "kdv-burgers") {
    Expr lbd = parameter("lbd", params, ctx, open);
    Expr mu = parameter("mu", params, ctx, open);
    return conserved(name, class_flux(1, lbd, mu * u.pow(2) / Expr(2)), open);
  }
  if (name == "gen-kdv-burgers") {
    int m = integer_parameter("m", params);
    Expr lbd = parameter("lbd", params, ctx, open);
    Expr mu = parameter("mu", params, ctx, open);
    return conserved(name, class_flux(1, lbd, mu * u.pow(m)), open);
  }
  if (name == "paper-example") {
    Expr lbd = parameter("lbd", params, ctx, open, true);
    Expr mu = parameter("mu", params, ctx, open);
    return conserved(name, class_flux(lbd, mu * u, mu.pow(2) * u.pow(3) / (Expr(9) * lbd)), open);
  }
  throw std::invalid_argument("unknown instance '" + name + "'");
}

}  // namespace kdvsym
