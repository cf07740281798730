#include <doctest.h>

#include <cmath>
#include <sstream>

#include "adia/errors.hpp"
#include "adia/grover.hpp"
#include "adia/propagate.hpp"

using namespace adia;

TEST_SUITE("propagate") {

TEST_CASE("a constant Hamiltonian keeps its ground state") {
  Matrix h(2, 2);
  h << 0.0, 0.3, 0.3, 1.0;
  const SimulationTrace tr = propagate(constant_family(h), 25.0);
  CHECK(tr.final_distance() < 1e-12);
  CHECK(tr.norms.back() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("Bures angle keeps small angles") {
  Vector a(2);
  Vector b(2);
  a << 1.0, 1e-9;
  b << 1.0, 0.0;
  CHECK(bures_angle(a, b) == doctest::Approx(1e-9).epsilon(1e-12));
  CHECK(bures_angle(Complex(0.0, 3.0) * b, b) == 0.0);
  CHECK_THROWS_AS(bures_angle(Vector::Zero(2), b), ZeroVector);
}

TEST_CASE("second- and fourth-order integrators agree") {
  const HamiltonianFamily fam = grover_family(16, Schedule::linear());
  PropagationOptions o2;
  o2.integrator = Integrator::magnus2;
  o2.tol = 1e-10;
  PropagationOptions o4;
  o4.tol = 1e-10;
  const SimulationTrace a = propagate(fam, 60.0, o2);
  const SimulationTrace b = propagate(fam, 60.0, o4);
  CHECK(std::abs(a.final_distance() - b.final_distance()) < 1e-8);
  CHECK(b.steps < a.steps);
  CHECK(b.error_estimate <= 1e-10);
}

TEST_CASE("two-level reduction matches the full search model") {
  PropagationOptions o;
  o.tol = 1e-11;
  const double a = propagate(grover_family(8, Schedule::optimal(8.0)), 30.0, o).final_distance();
  const double b = propagate(grover_family(8, Schedule::optimal(8.0), GroverMode::fullN, 3), 30.0, o).final_distance();
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("unitarity and recorded grid") {
  PropagationOptions o;
  o.output_points = 11;
  const SimulationTrace tr = propagate(grover_family(32, Schedule::beta(1)), 200.0, o);
  CHECK(tr.s.size() == 11);
  CHECK(tr.s.front() == 0.0);
  CHECK(tr.s.back() == 1.0);
  for (double n : tr.norms) CHECK(n == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tr.distances.front() < 1e-14);
}

TEST_CASE("step budget") {
  PropagationOptions o;
  o.tol = 1e-13;
  o.max_steps = 64;
  CHECK_THROWS_AS(propagate(grover_family(32, Schedule::linear()), 500.0, o), StepSizeUnderflow);
  CHECK_THROWS_AS(propagate(grover_family(32, Schedule::linear()), -1.0), std::invalid_argument);
}

TEST_CASE("trace csv layout") {
  PropagationOptions o;
  o.output_points = 3;
  const SimulationTrace tr = propagate(grover_family(4, Schedule::linear()), 10.0, o);
  std::ostringstream out;
  write_trace_csv(out, tr, true);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "s,norm,distance,re_0,im_0,re_1,im_1");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}

}
