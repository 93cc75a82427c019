#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "properties.hpp"

namespace {

void expect_clean(const props::Outcome& o) {
  CAPTURE(o.name);
  CAPTURE(o.first_failure);
  CHECK(o.cases >= 1000);
  CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("normalize is idempotent") { expect_clean(props::normalize_idempotent(1000, 101)); }

TEST_CASE("total derivatives commute") { expect_clean(props::total_derivatives_commute(1000, 202)); }

TEST_CASE("evaluation agrees before and after normalization") { expect_clean(props::eval_consistent(1000, 303)); }

TEST_CASE("manifold reduction is idempotent and independent of rule order") {
  expect_clean(props::manifold_reduce_properties(1000, 404));
}

TEST_CASE("split_residual round trip") { expect_clean(props::split_round_trip(1000, 505)); }
