#include <cmath>

#include "doctest.h"
#include "sntg/schedules.hpp"

using sntg::rampdown_factor;
using sntg::rampup_weight;

TEST_CASE("rampup closed-form values") {
  CHECK(rampup_weight(80, 80) == 1.0);
  CHECK(rampup_weight(200, 80) == 1.0);
  CHECK(rampup_weight(0, 80) == doctest::Approx(0.006737946999085467).epsilon(1e-12));
  CHECK(rampup_weight(40, 80) == doctest::Approx(0.2865047968601901).epsilon(1e-12));
  CHECK(rampup_weight(0, 0) == 1.0);
}

TEST_CASE("rampup is nondecreasing") {
  double prev = 0.0;
  for (std::size_t t = 0; t <= 90; ++t) {
    const double w = rampup_weight(t, 80);
    CHECK(w >= prev);
    CHECK(w <= 1.0);
    prev = w;
  }
}

TEST_CASE("rampdown closed-form values") {
  CHECK(rampdown_factor(250, 300, 50) == 1.0);
  CHECK(rampdown_factor(0, 300, 50) == 1.0);
  CHECK(rampdown_factor(300, 300, 50) == doctest::Approx(3.726653172078671e-06).epsilon(1e-12));
  CHECK(rampdown_factor(10, 10, 0) == 1.0);
}

TEST_CASE("rampdown is nonincreasing over the final window") {
  double prev = 2.0;
  for (std::size_t t = 250; t <= 300; ++t) {
    const double f = rampdown_factor(t, 300, 50);
    CHECK(f <= prev);
    CHECK(f > 0.0);
    prev = f;
  }
}
