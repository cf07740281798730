#include <doctest.h>

#include <cmath>
#include <numbers>

#include "adia/errors.hpp"
#include "adia/grover.hpp"
#include "adia/spectral.hpp"

using namespace adia;

TEST_SUITE("grover") {

TEST_CASE("reduced Hamiltonian spectrum") {
  const double N = 16.0;
  const HamiltonianFamily fam = grover_family(16, Schedule::linear());
  for (double s : {0.0, 0.25, 0.5, 0.9}) {
    const RealVector e = eigenvalues(fam, s);
    CHECK(e(1) - e(0) == doctest::Approx(grover::gap(N, s)).epsilon(1e-12));
  }
  CHECK(grover::gap(N, 0.5) == doctest::Approx(1.0 / std::sqrt(N)));
}

TEST_CASE("mixing angle of the ground state") {
  const double N = 16.0;
  const Vector g = ground_state(grover_family(16, Schedule::linear()), 0.3);
  CHECK(std::abs(g(0)) == doctest::Approx(grover::sin_half_theta(N, 0.3)).epsilon(1e-12));
  CHECK(std::abs(g(1)) == doctest::Approx(grover::cos_half_theta(N, 0.3)).epsilon(1e-12));
}

TEST_CASE("J0 closed forms against quadrature") {
  for (double N : {4.0, 32.0, 1000.0}) {
    CHECK(grover::j0(N, Schedule::linear()) == doctest::Approx(grover::j0_linear(N)).epsilon(1e-9));
    CHECK(grover::j0(N, Schedule::optimal(N)) == doctest::Approx(grover::j0_optimal(N)).epsilon(1e-9));
  }
}

TEST_CASE("Fisher action against a fine Riemann sum") {
  const double N = 16.0;
  const Schedule f = Schedule::linear();
  const int n = 1000000;
  double k = 0.0;
  for (int i = 0; i < n; ++i) k += 0.25 * fisher_information(N, f, (i + 0.5) / n);
  k /= n;
  CHECK(fisher_geometry(N, f).action == doctest::Approx(k).epsilon(1e-8));
}

TEST_CASE("action dominates squared length") {
  const double N = 32.0;
  for (const Schedule& f : {Schedule::linear(), Schedule::beta(1), Schedule::beta(3)}) {
    const FisherGeometry g = fisher_geometry(N, f);
    CHECK(g.action > g.bures_length * g.bures_length);
    CHECK(g.bures_length == doctest::Approx(g.shortest_length).epsilon(1e-9));
  }
  const FisherGeometry opt = fisher_geometry(N, Schedule::optimal(N));
  CHECK(opt.action == doctest::Approx(opt.bures_length * opt.bures_length).epsilon(1e-10));
}

TEST_CASE("constant-speed ODE recovers the optimal schedule") {
  const Schedule ode = schedule_from_constant_fisher(64.0);
  const Schedule opt = Schedule::optimal(64.0);
  for (double s : {0.0, 0.013, 0.31, 0.5, 0.777, 1.0}) {
    CHECK(std::abs(ode(s) - opt(s)) < 1e-10);
    CHECK(std::abs(ode(s, 1) - opt(s, 1)) < 1e-8 * std::abs(opt(s, 1)) + 1e-10);
  }
  CHECK(ode.kind() == ScheduleKind::custom);
}

TEST_CASE("closed-form trade-off values") {
  const GroverClosedForms lin = closed_tradeoff(32.0, ScheduleKind::linear, 50.0);
  CHECK(lin.tradeoff.T_val == doctest::Approx(758.8541666666667).epsilon(1e-13));
  CHECK(lin.lambda10_end == doctest::Approx(0.17399263633844).epsilon(1e-12));
  CHECK(lin.J0 == doctest::Approx(20.98958333333333).epsilon(1e-12));
  const GroverClosedForms b0 = closed_tradeoff(32.0, ScheduleKind::beta, 50.0, 0);
  CHECK(b0.tradeoff.T_val == doctest::Approx(lin.tradeoff.T_val));
  const GroverClosedForms b1 = closed_tradeoff(1024.0, ScheduleKind::beta, 50.0, 1);
  CHECK(b1.tradeoff.eps_tilde == doctest::Approx(b1.eps_tilde_asymptotic).epsilon(0.15));
  CHECK_THROWS_AS(closed_tradeoff(32.0, ScheduleKind::custom, 50.0), UnsupportedSchedule);
}

TEST_CASE("resonance times and literature overlays") {
  const auto t = resonance_times(32.0, Schedule::linear(), 3);
  REQUIRE(t.size() == 3);
  CHECK(t[2] == doctest::Approx(3.0 * t[0]));
  CHECK(t[0] * grover::omega10(32.0, Schedule::linear()) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(jansen_bound(100.0, 10.0) == doctest::Approx((std::numbers::pi / 2.0 + std::numbers::pi * std::numbers::pi)));
  CHECK(roland_time(100.0, 0.1) == doctest::Approx(50.0 * std::numbers::pi));
  CHECK_FALSE(literature_bounds(100.0, 10.0, 0.1).tight);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(grover_family(1, Schedule::linear()), std::invalid_argument);
  CHECK_THROWS_AS(grover_family(kMaxFullN + 1, Schedule::linear(), GroverMode::fullN), std::invalid_argument);
  CHECK_THROWS_AS(grover_family(8, Schedule::linear(), GroverMode::fullN, 8), std::out_of_range);
}

}
