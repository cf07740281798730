#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "adia/errors.hpp"
#include "adia/schedule.hpp"

using namespace adia;

TEST_SUITE("schedule") {

TEST_CASE("linear schedule and its derivatives") {
  const Schedule f = Schedule::linear();
  CHECK(f(0.3) == doctest::Approx(0.3));
  CHECK(f(0.3, 1) == doctest::Approx(1.0));
  CHECK(f(0.3, 2) == 0.0);
  CHECK(f.kind() == ScheduleKind::linear);
  CHECK(f.cancelation_order() == 0);
}

TEST_CASE("optimal schedule endpoints, symmetry and derivative") {
  const double N = 64.0;
  const Schedule f = Schedule::optimal(N);
  CHECK(f(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(f(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f(0.2) + f(0.8) == doctest::Approx(1.0).epsilon(1e-14));
  const double h = 1e-5;
  for (int order = 0; order < 4; ++order) {
    const double fd = (f(0.37 + h, order) - f(0.37 - h, order)) / (2.0 * h);
    CHECK(f(0.37, order + 1) == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK(f.size_parameter() == N);
}

TEST_CASE("beta schedule matches the regularized incomplete beta function") {
  for (int p = 1; p <= 4; ++p) {
    const Schedule f = Schedule::beta(p);
    CHECK(f.cancelation_order() == p);
    for (double s : {0.0, 0.1, 0.35, 0.5, 0.77, 1.0}) {
      CHECK(f(s) == doctest::Approx(boost::math::ibeta(p + 1.0, p + 1.0, s)).epsilon(1e-13));
      CHECK(f(s, 1) == doctest::Approx(boost::math::ibeta_derivative(p + 1.0, p + 1.0, s)).epsilon(1e-12));
    }
    for (int j = 1; j <= p; ++j) {
      CHECK(std::abs(f(0.0, j)) < 1e-12);
      CHECK(std::abs(f(1.0, j)) < 1e-12);
    }
    CHECK(std::abs(f(1.0, p + 1)) > 1e-3);
  }
}

TEST_CASE("validation accepts the built-in schedules") {
  CHECK_NOTHROW(validate_schedule(Schedule::linear()));
  CHECK_NOTHROW(validate_schedule(Schedule::optimal(32.0)));
  CHECK_NOTHROW(validate_schedule(Schedule::beta(3)));
}

TEST_CASE("validation rejects broken schedules") {
  const Schedule shifted = Schedule::custom("shifted", [](double s, int o) { return o == 0 ? s + 0.1 : (o == 1 ? 1.0 : 0.0); });
  CHECK_THROWS_AS(validate_schedule(shifted), InvalidFamily);
  const Schedule wiggle = Schedule::custom("wiggle", [](double s, int o) {
    return o == 0 ? s + 0.2 * std::sin(6.0 * M_PI * s) : 0.0;
  });
  CHECK_THROWS_AS(validate_schedule(wiggle), InvalidFamily);
}

TEST_CASE("schedule names") {
  CHECK(Schedule::beta(2).name() == "beta2");
  CHECK(to_string(ScheduleKind::optimal) == "optimal");
}

}
