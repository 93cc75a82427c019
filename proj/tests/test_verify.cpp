#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kdvsym/detsys.hpp"
#include "kdvsym/parse.hpp"
#include "kdvsym/print.hpp"
#include "kdvsym/verify.hpp"
#include "oracle.hpp"

using namespace kdvsym;

TEST_CASE("KdV fields accepted and perturbations rejected as the oracle says") {
  Context c = Context::standard();
  EvolutionSystem kdv = named_instance("kdv", {}, c);
  for (const auto& f : oracle::kdv_fields()) {
    CAPTURE(f.text);
    VectorField X = parse_vector_field(f.text, c);
    Verdict v = check_symmetry(X, kdv, c);
    CHECK(v.yes());
    CHECK(v.report.empty());
    for (const auto& q : oracle::perturbations(f)) {
      CAPTURE(q.text);
      VectorField Y = parse_vector_field(q.text, c);
      bool expected = oracle::kdv_condition(Y).is_zero();
      Verdict w = check_symmetry(Y, kdv, c);
      CHECK(w.yes() == expected);
      if (!expected) {
        CHECK(w.is_symmetry == ZeroStatus::NonZero);
        CHECK_FALSE(w.report.empty());
      }
    }
  }
}

TEST_CASE("the residual report names the offending monomial") {
  Context c = Context::standard();
  EvolutionSystem kdv = named_instance("kdv", {}, c);
  Verdict v = check_symmetry(parse_vector_field("-3*t*d/dx + d/du", c), kdv, c);
  REQUIRE(v.report.size() == 1);
  CHECK(v.report[0].rule == "u_t");
  CHECK(print(Expr(Poly::monomial(v.report[0].basis))) == "u_x");
  CHECK(v.report[0].coefficient == Expr(1));
  CHECK(format_verdict(v).find("coefficient of u_x is 1") != std::string::npos);
}

TEST_CASE("variable mismatch is an error") {
  Context c = Context::standard();
  EvolutionSystem kdv = named_instance("kdv", {}, c);
  CHECK_THROWS_AS(check_symmetry(parse_vector_field("d/dv", c), kdv, c), std::invalid_argument);
  CHECK_THROWS_AS(check_symmetry(parse_vector_field("v*d/dx", c), kdv, c), std::invalid_argument);
}

TEST_CASE("classification reads the t, x and u coefficients") {
  Context c = Context::standard();
  CHECK(classify_operator(parse_vector_field("d/dv", c)).kind == OperatorKind::Lie);
  CHECK(classify_operator(parse_vector_field("v*d/dv + d/dx", c)).kind == OperatorKind::Lie);
  OperatorClass k = classify_operator(parse_vector_field("exp(v)*u*d/du", c));
  CHECK(k.kind == OperatorKind::PurePotential);
  CHECK(k.witness == "d/du");
}

TEST_CASE("worked example suite with symbolic and numeric parameters") {
  SuiteReport sym = paper_example_suite();
  CHECK(sym.all_pass());
  CHECK(sym.steps.size() == 5);
  SuiteOptions opt;
  opt.lbd = 9;
  opt.mu = 3;
  SuiteReport num = paper_example_suite(opt);
  CHECK(num.all_pass());
  CHECK(format_suite(num).find("5/5 steps pass") != std::string::npos);
  opt.lbd = 0;
  CHECK_THROWS_AS(paper_example_suite(opt), std::invalid_argument);
}

TEST_CASE("a perturbed operator of the worked example is rejected") {
  SuiteOptions opt;
  opt.eta1_scale = 2;
  SuiteReport r = paper_example_suite(opt);
  CHECK_FALSE(r.all_pass());
  CHECK_FALSE(r.steps[1].pass);
  CHECK(r.steps[1].detail.find("coefficient of") != std::string::npos);
  CHECK(r.steps[2].pass);  // still pure potential
}

TEST_CASE("the worked example operator has exactly zero residuals") {
  Context c = Context::standard();
  EvolutionSystem s = potential_system(named_instance("paper-example", {}, c), true, c);
  VectorField X = paper_example_operator(c);
  Verdict v = check_symmetry(X, s, c);
  CHECK(v.yes());
  for (const auto& [head, e] : v.residuals) CHECK(e.is_zero());
  // without v_xx = u_x among the rules the same operator is not a symmetry
  Context c2 = Context::standard();
  EvolutionSystem plain = potential_system(named_instance("paper-example", {}, c2), false, c2);
  CHECK(check_symmetry(paper_example_operator(c2), plain, c2).is_symmetry == ZeroStatus::NonZero);
}
