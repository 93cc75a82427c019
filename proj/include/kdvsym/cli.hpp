#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "kdvsym/poly.hpp"

namespace kdvsym {

/// Settings shared by every command; each report starts with them.
struct RunConfig {
  std::uint64_t seed = 1;
  int max_order = 6;
  int consequence_order = 0;
  bool cross_consequence = false;
  std::string format = "text";  // text, latex or json
  std::map<std::string, Rational> params;
};

/// "lbd=9,mu=3" -> {lbd: 9, mu: 3}; values are rationals such as -1/3.
std::map<std::string, Rational> parse_params(const std::string& text);

/// Exit codes: derive 0 on a match (or for files), 1 on a discrepancy; check 0
/// symmetry, 1 not a symmetry, 3 unknown; compare 0 when every step holds.
/// Usage and input errors give 2. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kdvsym
