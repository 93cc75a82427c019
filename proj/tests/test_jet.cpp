#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "kdvsym/jet.hpp"
#include "kdvsym/parse.hpp"
#include "kdvsym/print.hpp"

using namespace kdvsym;

namespace {

Context jet_context() {
  Context c = Context::standard();
  c.add_parameter("lbd", true);
  c.add_function("A", {"u"});
  c.add_function("xi1", {"t", "x"});
  return c;
}

bool has_head(const SolutionManifold& m, const std::string& head) {
  return std::any_of(m.rules().begin(), m.rules().end(),
                     [&](const Rule& r) { return print_atom(r.head) == head; });
}

}  // namespace

TEST_CASE("total derivatives") {
  Context c = jet_context();
  const JetSpace js = JetSpace::standard();
  CHECK(total_derivative(parse("u^2", c), 'x', js) == parse("2*u*u_x", c));
  CHECK(total_derivative(parse("A(u)", c), 'x', js) == parse("A'(u)*u_x", c));
  CHECK(total_derivative(parse("xi1*u_x", c), 't', js) == parse("xi1_t*u_x + xi1*u_tx", c));
  CHECK(total_derivative(parse("v", c), JetIndex{1, 1}, js) == parse("v_xt", c));
  CHECK(total_derivative(parse("t*x", c), 't', js) == parse("x", c));
  CHECK_THROWS_AS(total_derivative(parse("u_xxxx", c), 'x', js), JetError);
}

TEST_CASE("orienting equations") {
  Context c = jet_context();
  Rule r = orient(parse("u_t - u_xxx - 2*u*u_x", c));
  CHECK(print_atom(r.head) == "u_t");
  CHECK(r.rhs == parse("u_xxx + 2*u*u_x", c));
  Rule s = orient(parse("v_x - u", c));
  CHECK(print_atom(s.head) == "v_x");
  CHECK_THROWS_AS(orient(parse("u_t^2 - u", c)), JetError);
}

TEST_CASE("system text format") {
  Context c = Context::standard();
  const char* text =
      "[system burgers-like]\n"
      "params: lbd\n"
      "# a comment\n"
      "u_t = lbd*u_xx + u*u_x\n";
  EvolutionSystem sys = parse_system(text, c);
  CHECK(sys.name == "burgers-like");
  REQUIRE(sys.rules.size() == 1);
  CHECK(sys.params == std::vector<std::string>{"lbd"});
  Context c2 = Context::standard();
  EvolutionSystem again = parse_system(format_system(sys), c2);
  CHECK(again.rules[0].rhs == sys.rules[0].rhs);
  CHECK(sys.dependents() == std::vector<std::string>{"u"});
}

TEST_CASE("system format errors carry positions") {
  Context c = Context::standard();
  CHECK_THROWS_AS(parse_system("u_t = u_xx\n", c), ParseError);
  try {
    Context c2 = Context::standard();
    parse_system("[system s]\nu_t = (u_xx\n", c2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() > 11);
  }
}

TEST_CASE("consequences of the potential system") {
  Context c = Context::standard();
  EvolutionSystem pot = parse_system("[system pot]\nv_x = u\nv_t = u_xx + u^2\n", c);
  SolutionManifold plain = consequences(pot, 0, false);
  CHECK(plain.rules().size() == 2);
  SolutionManifold first = consequences(pot, 1, false);
  CHECK(has_head(first, "v_xx"));
  CHECK_FALSE(has_head(first, "v_xt"));
  SolutionManifold cross = consequences(pot, 1, true);
  CHECK(has_head(cross, "v_xx"));
  CHECK(has_head(cross, "v_xt"));
}

TEST_CASE("manifold reduction") {
  Context c = Context::standard();
  EvolutionSystem kdv = parse_system("[system kdv]\nu_t = u_xxx + 2*u*u_x\n", c);
  SolutionManifold m(kdv, JetSpace::derivation());
  CHECK(m.reduce(parse("u_t", c)) == parse("u_xxx + 2*u*u_x", c));
  CHECK(m.reduce(parse("u_tx", c)) == parse("u_xxxx + 2*u_x^2 + 2*u*u_xx", c));
  Expr e = parse("u_t*u_x - u_tx", c);
  CHECK(manifold_reduce(manifold_reduce(e, m), m) == manifold_reduce(e, m));
}

TEST_CASE("jet spaces") {
  CHECK(JetSpace::standard().max_for("u") == 4);
  CHECK(JetSpace::with_max(8).max_for("v") == 6);
  CHECK(JetSpace::derivation().max_for("u") == 6);
}
