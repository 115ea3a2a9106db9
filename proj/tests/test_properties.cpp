#include "doctest.h"
#include "property_checks.hpp"

TEST_CASE("resampling invariants over random instances") {
  for (const auto& r : rebalance::testing::run_property_suite(300, 20241014)) {
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.checked == 300);
    CHECK(r.failed == 0);
  }
}
