#include "doctest.h"
#include "props/props.hpp"

TEST_CASE("covers properties") {
  for (const auto& o : gk::props::covers_suite()) {
    INFO(o.name << ": " << o.first_failure);
    CHECK(o.cases >= 1000);
    CHECK(o.failures == 0);
  }
}
