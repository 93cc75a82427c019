#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kdvsym/cli.hpp"

using namespace kdvsym;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

const char* kOperator =
    "C0*d/dt + C1*d/dx + mu*C2*exp(-mu*v/(3*lbd))*u*d/du + (-3*lbd*C2*exp(-mu*v/(3*lbd)) + C3)*d/dv";

}  // namespace

TEST_CASE("parameter lists") {
  auto p = parse_params("lbd=9, mu=-1/3");
  CHECK(p.at("lbd") == 9);
  CHECK(p.at("mu") == Rational(-1, 3));
  CHECK(parse_params("").empty());
  CHECK_THROWS(parse_params("lbd"));
  CHECK_THROWS(parse_params("lbd=x"));
}

TEST_CASE("derive exit codes") {
  Run s = run({"derive", "scalar"});
  CHECK(s.code == 1);
  CHECK(contains(s.out, "DISCREPANCY (1 entry)"));
  CHECK(contains(s.out, "# seed=1"));
  Run p = run({"derive", "potential"});
  CHECK(p.code == 0);
  CHECK(contains(p.out, "MATCH"));
  Run a = run({"--cross-consequence", "derive", "augmented"});
  CHECK(a.code == 0);
  CHECK(contains(a.out, "cross-consequence=on"));
}

TEST_CASE("derive in LaTeX uses the paper symbols") {
  Run r = run({"derive", "potential", "--latex"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "\\begin{align}"));
  CHECK(contains(r.out, "\\xi^1_{x}"));
  CHECK(contains(r.out, "\\gamma_{x}"));
}

TEST_CASE("derive from a file and from a malformed file") {
  std::string ok = temp_file("kdvsym_ok.txt", "[system ok]\nu_t = u_xxx + 2*u*u_x\n");
  Run r = run({"derive", ok});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "[detsys ok]"));
  std::string bad = temp_file("kdvsym_bad.txt", "[system bad]\nu_t = (u_xx + u^2\n");
  Run e = run({"derive", bad});
  CHECK(e.code == 2);
  CHECK(contains(e.err, "line 2, column 18"));
  CHECK(run({"derive", "no-such-thing"}).code == 2);
}

TEST_CASE("check exit codes and classification") {
  Run lie = run({"check", "d/dx", "kdv"});
  CHECK(lie.code == 0);
  CHECK(contains(lie.out, "classification: Lie"));
  Run no = run({"check", "-3*t*d/dx + d/du", "kdv"});
  CHECK(no.code == 1);
  CHECK(contains(no.out, "coefficient of u_x is 1"));
  Run pot = run({"check", kOperator, "paper-example"});
  CHECK(pot.code == 0);
  CHECK(contains(pot.out, "PurePotential"));
  Run num = run({"--params", "lbd=9,mu=3", "check", kOperator, "paper-example:augmented"});
  CHECK(num.code == 0);
  Run bad = run({"check", "d/dx + ", "kdv"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "column"));
  // a system file carries no conserved form, so no potential system can be built for it
  std::string file = temp_file("kdvsym_plain.txt", "[system plain]\nu_t = u_xxx + 2*u*u_x\n");
  Run mismatch = run({"check", "d/dv", file});
  CHECK(mismatch.code == 2);
  Run unset = run({"check", "d/dx", "K(m,1)"});
  CHECK(unset.code == 2);
  CHECK(contains(unset.err, "m"));
}

TEST_CASE("operators read from files") {
  std::string op = temp_file("kdvsym_op.txt", "X = 2*u*mu*C2*exp(-mu*v/(3*lbd))*d/du - 3*lbd*C2*exp(-mu*v/(3*lbd))*d/dv\n");
  Run r = run({"check", op, "paper-example"});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "symmetry: no"));
  CHECK(contains(r.out, "residual of"));
}

TEST_CASE("compare runs the theorem scripts") {
  Run t1 = run({"compare", "1"});
  CHECK(t1.code == 0);
  CHECK(contains(t1.out, "steps verified"));
  Run t2 = run({"compare", "2"});
  CHECK(t2.code == 0);
  Run t3 = run({"compare", "3", "--params", "lbd=9,mu=3"});
  CHECK(t3.code == 0);
  CHECK(contains(t3.out, "inequivalence witness found"));
  CHECK(run({"compare", "4"}).code == 2);
}

TEST_CASE("reports are reproducible and embed the config") {
  Run a = run({"--seed", "7", "derive", "augmented"});
  Run b = run({"--seed", "7", "derive", "augmented"});
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "seed=7"));
  Run j1 = run({"--format", "json", "compare", "3"});
  Run j2 = run({"--format", "json", "compare", "3"});
  CHECK(j1.out == j2.out);
  auto j = nlohmann::json::parse(j1.out);
  CHECK(j["config"]["seed"] == 1);
  CHECK(j["steps"].size() == 5);
}

TEST_CASE("environment overrides") {
  setenv("KDVSYM_SEED", "11", 1);
  setenv("KDVSYM_FORMAT", "json", 1);
  Run r = run({"check", "d/dt", "kdv"});
  unsetenv("KDVSYM_SEED");
  unsetenv("KDVSYM_FORMAT");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["config"]["seed"] == 11);
  CHECK(j["symmetry"] == "yes");
  CHECK(j["classification"]["kind"] == "Lie");
  Run flag = run({"--seed", "5", "check", "d/dt", "kdv"});
  CHECK(contains(flag.out, "seed=5"));
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--format", "pdf", "derive", "scalar"}).code == 2);
  Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "derive"));
}
