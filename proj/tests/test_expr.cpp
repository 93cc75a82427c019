#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kdvsym/calculus.hpp"
#include "kdvsym/eval.hpp"
#include "kdvsym/parse.hpp"
#include "kdvsym/print.hpp"

using namespace kdvsym;

namespace {

Context paper_context() {
  Context c = Context::standard();
  c.add_parameter("lbd", true);
  c.add_parameter("mu", true);
  c.add_parameter("lbd1", true);
  c.add_parameter("lbd2");
  c.add_constant("C2");
  c.add_function("A", {"u"}, true);
  c.add_function("B", {"u"});
  c.add_function("C", {"u"});
  c.add_function("xi0", {"t"});
  c.add_function("xi1", {"t", "x"});
  c.add_function("alpha", {"t", "x"});
  c.add_function("beta", {"t", "x"});
  c.add_function("gamma", {"t", "x"});
  c.add_function("f", {"t"});
  return c;
}

}  // namespace

TEST_CASE("parse and print basic products") {
  Context c = paper_context();
  CHECK(print(parse("2*u*u_x", c)) == "2*u*u_x");
  CHECK(print(parse("u_x*u*2", c)) == "2*u*u_x");
  Expr d = parse("diff(A(u),u)", c);
  auto a = d.as_atom();
  REQUIRE(a);
  CHECK((*a)->name == "A");
  CHECK((*a)->index == std::vector<int>{1});
  CHECK(print(d) == "A'(u)");
  CHECK(print(d, Format::Latex) == "A'(u)");
}

TEST_CASE("parse the paper example right-hand side") {
  Context c = paper_context();
  Expr e = parse("lbd*u_xx + mu*u*u_x + mu^2/(9*lbd)*u^3", c);
  Expr again = parse(print(e), c);
  CHECK(again == e);
  CHECK(e.is_polynomial());
}

TEST_CASE("parse errors carry positions") {
  Context c = paper_context();
  CHECK_THROWS_AS(parse("2*+", c), ParseError);
  try {
    parse("u + foo", c);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse("diff(A,x)", c), ParseError);
  CHECK_THROWS_AS(parse("A_x", c), ParseError);
  CHECK_THROWS_AS(parse("u_y", c), ParseError);
  CHECK_THROWS_AS(parse("(u+1", c), ParseError);
}

TEST_CASE("differentiation rules") {
  Context c = paper_context();
  CHECK(differentiate(parse("u^2", c), "u") == parse("2*u", c));
  CHECK(differentiate(parse("ln(u)", c), "u") == parse("1/u", c));
  Expr e = parse("exp(-mu/(3*lbd)*v)", c);
  CHECK(differentiate(e, "v") == parse("-mu/(3*lbd)*exp(-mu/(3*lbd)*v)", c));
  CHECK(differentiate(parse("A(u)", c), "x").is_zero());
  CHECK(differentiate(parse("xi1_x", c), "t") == parse("xi1_tx", c));
}

TEST_CASE("normalization identities") {
  Context c = paper_context();
  CHECK(parse("(u+1)^2 - u^2 - 2*u - 1", c).is_zero());
  CHECK(parse("exp(v)*exp(-v)", c) == Expr(1));
  Expr alpha_form = parse("f*exp(-lbd1*x/(3*lbd))", c);
  Expr q10 = parse("lbd1*alpha + 3*lbd*alpha_x", c);
  Atom alpha = make_function("alpha", {"t", "x"});
  CHECK(substitute(q10, alpha, alpha_form).is_zero());
  CHECK(parse("(u^2-1)/(u-1)", c) == parse("u+1", c));
  CHECK(parse("1/(u+1) - 1/(u+1)", c).is_zero());
}

TEST_CASE("substitution through derivative instances") {
  Context c = paper_context();
  Atom beta = make_function("beta", {"t", "x"});
  CHECK(substitute(parse("beta_xx", c), beta, parse("gamma_x", c)) == parse("gamma_xxx", c));
  CHECK(substitute(parse("u*A(u)", c), parse("u", c), Expr(0)).is_zero());
  Atom alpha = make_function("alpha", {"t", "x"});
  CHECK(substitute(parse("alpha_x + xi1_xx", c), alpha, parse("C2 - xi1_x", c)).is_zero());
  CHECK_THROWS(substitute(parse("u", c), parse("2*u", c), Expr(1)));
}

TEST_CASE("zero testing") {
  Context c = paper_context();
  CHECK(is_zero(parse("u-u", c), c).status == ZeroStatus::Zero);
  ZeroVerdict v = is_zero(parse("A(u)", c), c);
  CHECK(v.status == ZeroStatus::NonZero);
  CHECK(sgn(v.witness_value) != 0);
}

TEST_CASE("numeric evaluation") {
  Context c = paper_context();
  Bindings b;
  b.set(make_jet("u"), 3);
  CHECK(eval_numeric(parse("u^2", c), b) == 9);
  Bindings b2;
  b2.set(make_jet("u", {0, 1}), 2);
  b2.set(make_function("A", {"u"}, {1}), 5);
  CHECK(eval_numeric(parse("u_x*A'(u)", c), b2) == 10);
}

TEST_CASE("latex names") {
  CHECK(latex_name("lbd1") == "\\lambda_1");
  CHECK(latex_name("xi0") == "\\xi^0");
  CHECK(latex_name("eta2") == "\\eta^2");
  CHECK(latex_name("C2") == "C_2");
  CHECK(latex_name("alpha") == "\\alpha");
}
