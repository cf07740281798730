#include <doctest.h>

#include <cmath>

#include "adia/apt.hpp"
#include "adia/errors.hpp"
#include "adia/grover.hpp"
#include "adia/propagate.hpp"
#include "adia/recurrence.hpp"

using namespace adia;

TEST_SUITE("recurrence") {

TEST_CASE("zeroth order is the ground state") {
  const CoefficientTable t = recurrence_table(grover_family(8, Schedule::linear()), 2);
  CHECK(t.dimension() == 2);
  for (std::size_t i : {std::size_t{0}, t.last() / 2, t.last()}) {
    CHECK(std::abs(t.b[0][i](0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(t.b[0][i](1, 0)) < 1e-14);
  }
}

TEST_CASE("first order matches the endpoint formulas") {
  for (const Schedule& f : {Schedule::linear(), Schedule::optimal(8.0)}) {
    const HamiltonianFamily fam = grover_family(8, f);
    const CoefficientTable t = recurrence_table(fam, 2);
    const EndpointData d = endpoint_data(fam);
    const auto c1 = b1(d);
    const auto c2 = b2(d);
    CHECK(t.aggregate(0, 1, t.last(), 3.0).real() == doctest::Approx(d.J(0)).epsilon(1e-8));
    for (double T : {5.0, 77.0, 640.0}) {
      CHECK(std::abs(t.aggregate(1, 1, t.last(), T) - c1[1].evaluate(T)) <= 1e-7 * c1[1].max_modulus());
      CHECK(std::abs(t.aggregate(1, 2, t.last(), T) - c2[1].evaluate(T)) <= 1e-6 * c2[1].max_modulus());
    }
  }
}

TEST_CASE("grid refinement converges at fourth order") {
  const HamiltonianFamily fam = grover_family(4, Schedule::linear());
  AptOptions opt;
  opt.quadrature_tol = 1e-13;
  const auto c1 = b1(endpoint_data(fam, 1.0, opt));
  auto err = [&](int points) {
    const CoefficientTable t = recurrence_table(fam, 1, points);
    return std::abs(t.aggregate(1, 1, t.last(), 40.0) - c1[1].evaluate(40.0));
  };
  const double order = std::log2(err(257) / err(513));
  CHECK(order > 3.5);
  CHECK(order < 5.0);
}

TEST_CASE("boundary-canceled orders vanish within the grid error") {
  const CoefficientTable t = recurrence_table(grover_family(8, Schedule::beta(2)), 3);
  for (int p : {1, 2}) CHECK(std::abs(t.aggregate(1, p, t.last(), 20.0)) <= 10.0 * t.grid_error[p]);
  CHECK(std::abs(t.aggregate(1, 3, t.last(), 20.0)) > 1e-3);
}

TEST_CASE("distance expansion agrees with the endpoint leading term") {
  const HamiltonianFamily fam = grover_family(16, Schedule::linear());
  const CoefficientTable t = recurrence_table(fam, 2);
  const EndpointData d = endpoint_data(fam);
  for (double T : {300.0, 1000.0}) {
    CHECK(distance_expansion(t, T).leading == doctest::Approx(leading_distance(d, fam, T)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(distance_expansion(t, 300.0, 1), std::invalid_argument);
}

TEST_CASE("linear schedule fails the cancelation precondition") {
  const CoefficientTable t = recurrence_table(grover_family(8, Schedule::linear()), 3);
  CHECK_THROWS_AS(distance_expansion(t, 100.0, 1), BoundaryConditionViolated);
}

TEST_CASE("truncated expansion approaches the propagated state") {
  const HamiltonianFamily fam = grover_family(8, Schedule::linear());
  const CoefficientTable t = recurrence_table(fam, 2);
  const double T = 400.0;
  PropagationOptions opt;
  opt.tol = 1e-10;
  const Vector psi = propagate(fam, T, opt).states.back();
  const double e0 = bures_angle(truncated_state(t, t.last(), T, 0), psi);
  const double e1 = bures_angle(truncated_state(t, t.last(), T, 1), psi);
  const double e2 = bures_angle(truncated_state(t, t.last(), T, 2), psi);
  CHECK(e1 < 0.1 * e0);
  CHECK(e2 < 0.1 * e1);
}

TEST_CASE("bad grids are rejected") {
  const HamiltonianFamily fam = grover_family(8, Schedule::linear());
  CHECK_THROWS_AS(recurrence_table(fam, 1, 100), std::invalid_argument);
  CHECK_THROWS_AS(recurrence_table(fam, 1, 9), std::invalid_argument);
  CHECK_THROWS_AS(recurrence_table(fam, kMaxRecurrenceOrder + 1), std::invalid_argument);
}

TEST_CASE("a coarse grid on a narrow gap raises GridTooCoarse") {
  CHECK_THROWS_AS(recurrence_table(grover_family(4096, Schedule::linear()), 2, 17), GridTooCoarse);
}

}
