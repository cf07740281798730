#include <doctest.h>

#include <cmath>

#include "adia/apt.hpp"
#include "adia/errors.hpp"
#include "adia/grover.hpp"
#include "adia/recurrence.hpp"

using namespace adia;

TEST_SUITE("apt") {

TEST_CASE("phase series merges equal frequencies") {
  PhaseSeries s;
  s.add(1.0, 0.5);
  s.add(Complex(0.0, 2.0), 0.5);
  s.add(-3.0, 0.0);
  CHECK(s.terms().size() == 2);
  CHECK(s.max_modulus() == doctest::Approx(std::sqrt(5.0) + 3.0));
  const Complex v = s.evaluate(2.0);
  const Complex expect = Complex(1.0, 2.0) * std::exp(Complex(0.0, 1.0)) - 3.0;
  CHECK(std::abs(v - expect) < 1e-14);
}

TEST_CASE("J0 integral against closed forms") {
  CHECK(grover::j0_linear(4.0) == doctest::Approx(2.25));
  const HamiltonianFamily lin4 = grover_family(4, Schedule::linear());
  CHECK(j_integral(lin4, 0, 1.0) == doctest::Approx(2.25).epsilon(1e-9));
  const HamiltonianFamily opt32 = grover_family(32, Schedule::optimal(32.0));
  CHECK(j_integral(opt32, 0, 1.0) == doctest::Approx(grover::j0_optimal(32.0)).epsilon(1e-9));
  CHECK(grover::j0_optimal(32.0) == doctest::Approx(7.756373059310404).epsilon(1e-13));
  // the excited level gets the opposite sign
  CHECK(j_integral(lin4, 1, 1.0) == doctest::Approx(-2.25).epsilon(1e-9));
}

TEST_CASE("Fisher bound dominates J") {
  for (const Schedule& f : {Schedule::linear(), Schedule::optimal(16.0), Schedule::beta(2)}) {
    const HamiltonianFamily fam = grover_family(16, f);
    CHECK(j_fisher_bound(fam, 0, 1.0) >= j_integral(fam, 0, 1.0) * (1.0 - 1e-12));
  }
}

TEST_CASE("first-order coefficient of the optimal schedule") {
  const double N = 32.0;
  const HamiltonianFamily fam = grover_family(32, Schedule::optimal(N));
  const EndpointData d = endpoint_data(fam);
  CHECK(d.omega(1) == doctest::Approx(0.30684787777876).epsilon(1e-10));
  const auto c1 = b1(d);
  CHECK(c1[0].evaluate(1.0).real() == doctest::Approx(grover::j0_optimal(N)).epsilon(1e-9));
  // |lambda_10| = arccos(1/sqrt N) at both ends
  CHECK(c1[1].max_modulus() == doctest::Approx(2.0 * std::acos(1.0 / std::sqrt(N))).epsilon(1e-10));
}

TEST_CASE("numerical trade-off reproduces the closed forms") {
  const HamiltonianFamily opt = grover_family(32, Schedule::optimal(32.0));
  const TradeoffResult t = tradeoff(endpoint_data(opt), 9.5);
  CHECK(t.T_val == doctest::Approx(73.68554406344872).epsilon(1e-8));
  CHECK(t.eps_tilde == doctest::Approx(2.0 / (9.5 * std::sqrt(31.0))).epsilon(1e-8));
  const GroverClosedForms cf = closed_tradeoff(32.0, ScheduleKind::optimal, 9.5);
  CHECK(t.bound_coefficient == doctest::Approx(cf.tradeoff.bound_coefficient).epsilon(1e-9));

  const HamiltonianFamily lin = grover_family(32, Schedule::linear());
  const TradeoffResult l = tradeoff(endpoint_data(lin), 50.0);
  CHECK(l.T_val == doctest::Approx(758.8541666666667).epsilon(1e-8));
}

TEST_CASE("trade-off algebra") {
  TradeoffResult t;
  t.T_val = 10.0;
  t.bound_coefficient = 2.0;
  t.p = 1;
  t.eps_tilde = t.bound(10.0);
  CHECK(t.bound(4.0) == doctest::Approx(2.0 / 16.0));
  CHECK(t.min_time(1.0) == doctest::Approx(10.0));
  CHECK(t.max_error(1.0) == doctest::Approx(t.bound(10.0)));
  CHECK(t.max_error(0.5) == doctest::Approx(t.bound(t.min_time(0.5))));
  CHECK_THROWS_AS(t.max_error(0.0), std::invalid_argument);
}

TEST_CASE("bound sandwich around the leading term") {
  const HamiltonianFamily fam = grover_family(16, Schedule::linear());
  const EndpointData d = endpoint_data(fam);
  for (double T : {50.0, 173.0, 900.0, 4000.0}) {
    const double lead = leading_distance(d, fam, T);
    const DistanceBounds b = distance_bounds(d, fam, T);
    CHECK(b.lower >= 0.0);
    CHECK(b.lower <= lead + 1e-15);
    CHECK(lead <= b.upper + 1e-15);
  }
}

TEST_CASE("vanishing leading order") {
  std::vector<PhaseSeries> zero(2, PhaseSeries(0.0));
  CHECK_THROWS_AS(tradeoff_from_coefficients(zero, zero, 0, 10.0), VanishingLeadingOrder);
}

TEST_CASE("boundary cancelation is checked") {
  CHECK_THROWS_AS(check_boundary_cancelation(grover_family(8, Schedule::linear()), 1),
                  BoundaryConditionViolated);
  CHECK_NOTHROW(check_boundary_cancelation(grover_family(8, Schedule::beta(2)), 2));
  CHECK_THROWS_AS(check_boundary_cancelation(grover_family(8, Schedule::beta(1)), 2),
                  BoundaryConditionViolated);
}

TEST_CASE("endpoint coefficients agree with the recurrence") {
  const HamiltonianFamily fam = grover_family(8, Schedule::beta(1));
  const BoundaryCoefficients bc = bc_coefficients(fam, 1);
  const CoefficientTable table = recurrence_table(fam, 3);
  for (double T : {11.0, 97.0, 1234.5}) {
    const double s2 = bc.leading[1].max_modulus();
    const double s3 = bc.next[1].max_modulus();
    CHECK(std::abs(table.aggregate(1, 2, table.last(), T) - bc.leading[1].evaluate(T)) <= 1e-6 * s2);
    CHECK(std::abs(table.aggregate(1, 3, table.last(), T) - bc.next[1].evaluate(T)) <= 1e-6 * s3);
  }
}

TEST_CASE("boundary-canceled trade-off against the closed form") {
  const HamiltonianFamily fam = grover_family(64, Schedule::beta(1));
  const TradeoffResult t = bc_tradeoff(fam, 1, 50.0);
  const GroverClosedForms cf = closed_tradeoff(64.0, ScheduleKind::beta, 50.0, 1);
  CHECK(t.bound_coefficient == doctest::Approx(cf.tradeoff.bound_coefficient).epsilon(1e-8));
  CHECK(t.T_val == doctest::Approx(cf.tradeoff.T_val).epsilon(1e-6));
}

}
