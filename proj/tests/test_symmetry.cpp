#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kdvsym/detsys.hpp"
#include "kdvsym/print.hpp"
#include "kdvsym/symmetry.hpp"
#include "kdvsym/verify.hpp"
#include "oracle.hpp"

using namespace kdvsym;

namespace {

struct Kdv {
  Context ctx = Context::standard();
  EvolutionSystem sys;
  Kdv() { sys = named_instance("kdv", {}, ctx); }
};

}  // namespace

TEST_CASE("vector field text round trip") {
  Context c = Context::standard();
  VectorField X = parse_vector_field("X = x*d/dx + 3*t*d/dt - 2*u*d/du", c);
  CHECK(print(X.coeff("t")) == "3*t");
  CHECK(print(X.coeff("u")) == "-2*u");
  CHECK(X.coeff("v").is_zero());
  VectorField Y = parse_vector_field(format_vector_field(X), c);
  CHECK(Y.coeff("x") == X.coeff("x"));
  VectorField Z = parse_vector_field("d/dx + t*d/dx", c);
  CHECK(print(Z.coeff("x")) == "t+1");
  CHECK_THROWS_AS(parse_vector_field("d/dy", c), ParseError);
}

TEST_CASE("first prolongation of the scaling field") {
  Context c = Context::standard();
  VectorField X = parse_vector_field("x*d/dx + 3*t*d/dt - 2*u*d/du", c);
  Prolongation pr(X, JetSpace::standard());
  // eta^x = D_x eta - u_x D_x xi1 - u_t D_x xi0 = -2 u_x - u_x
  CHECK(pr.eta("u", {0, 1}) == parse("-3*u_x", c));
  CHECK(pr.eta("u", {1, 0}) == parse("-5*u_t", c));
  CHECK(pr.eta("u", {0, 3}) == parse("-5*u_xxx", c));
}

TEST_CASE("residuals agree exactly with the characteristic-form oracle") {
  Kdv k;
  SolutionManifold m = consequences(k.sys, 0, false, JetSpace::derivation());
  for (const auto& f : oracle::kdv_fields()) {
    std::vector<oracle::Field> all{f};
    for (const auto& q : oracle::perturbations(f)) all.push_back(q);
    for (const auto& g : all) {
      CAPTURE(g.text);
      VectorField X = parse_vector_field(g.text, k.ctx);
      std::vector<Expr> res = invariance_residual(X, m);
      REQUIRE(res.size() == 1);
      CHECK(oracle::to_symbols(res[0]) == oracle::kdv_condition(X));
    }
  }
}

TEST_CASE("oracle classification of the KdV fields") {
  Kdv k;
  for (const auto& f : oracle::kdv_fields()) {
    CHECK(oracle::kdv_condition(parse_vector_field(f.text, k.ctx)).is_zero());
  }
  int rejected = 0;
  for (const auto& f : {oracle::kdv_fields()[2], oracle::kdv_fields()[3]}) {
    for (const auto& q : oracle::perturbations(f)) {
      CAPTURE(q.text);
      CHECK_FALSE(oracle::kdv_condition(parse_vector_field(q.text, k.ctx)).is_zero());
      ++rejected;
    }
  }
  CHECK(rejected == 10);
}

TEST_CASE("a general polynomial field against the oracle") {
  Kdv k;
  const char* text = "(t^2*x + u)*d/dt + (x*u - 3*t)*d/dx + (u^2*x + t*u + 5)*d/du";
  VectorField X = parse_vector_field(text, k.ctx);
  SolutionManifold m = consequences(k.sys, 0, false, JetSpace::derivation());
  CHECK(oracle::to_symbols(invariance_residual(X, m)[0]) == oracle::kdv_condition(X));
}

TEST_CASE("split_residual reassembles its input") {
  Context c = Context::standard();
  c.add_function("A", {"u"});
  c.add_function("xi1", {"t", "x"});
  Expr r = parse("A(u)*u_x^2*u_xx + xi1_x*u_xxx - 3*u_x + xi1_t", c);
  Expr back;
  for (const auto& t : split_residual(r)) back += Expr(Poly::monomial(t.basis)) * t.coefficient;
  CHECK(back == r);
}

TEST_CASE("prolong lists every coordinate up to the order") {
  Context c = Context::standard();
  auto etas = prolong(parse_vector_field("d/dx", c), JetSpace::standard(), 1);
  CHECK(etas.size() == 6);
  for (const auto& [a, e] : etas) CHECK(e.is_zero());
  // a second prolongation needs v up to order 3
  CHECK_THROWS_AS(prolong(parse_vector_field("d/dx", c), JetSpace::standard(), 2), JetError);
}
