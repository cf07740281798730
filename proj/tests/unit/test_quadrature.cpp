#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "adia/errors.hpp"
#include "adia/quadrature.hpp"

using namespace adia;

TEST_SUITE("quadrature") {

TEST_CASE("adaptive integral of sin over a half period") {
  const double v = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("reversed limits change sign") {
  const double v = integrate([](double x) { return x * x; }, 1.0, 0.0);
  CHECK(v == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("budget exhaustion raises QuadratureFailure") {
  QuadratureOptions opt;
  opt.abs_tol = 1e-14;
  opt.max_intervals = 2;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(4000.0 * x) / (x + 1e-3); }, 0.0, 1.0, opt),
                  QuadratureFailure);
}

TEST_CASE("cumulative integral is exact for cubics") {
  const int n = 33;
  const double h = 1.0 / (n - 1);
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    f[i] = 4.0 * x * x * x - 3.0 * x * x + 1.0;
  }
  const auto F = cumulative_integral(std::span<const double>(f), h);
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    CHECK(F[i] == doctest::Approx(x * x * x * x - x * x * x + x).epsilon(1e-13));
  }
}

TEST_CASE("five-point derivative is exact for quartics") {
  const int n = 21;
  const double h = 0.05;
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) f[i] = std::pow(i * h, 4) - 2.0 * i * h;
  const auto d = differentiate(std::span<const double>(f), h);
  for (int i = 0; i < n; ++i) CHECK(d[i] == doctest::Approx(4.0 * std::pow(i * h, 3) - 2.0).epsilon(1e-10));
}

TEST_CASE("cumulative integral converges at fourth order") {
  auto err = [](int n) {
    const double h = 2.0 / (n - 1);
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) f[i] = std::exp(std::sin(3.0 * i * h));
    const auto F = cumulative_integral(std::span<const double>(f), h);
    const double exact = integrate([](double x) { return std::exp(std::sin(3.0 * x)); }, 0.0, 2.0,
                                   QuadratureOptions{1e-12, 0.0, 2000});
    return std::abs(F.back() - exact);
  };
  const double order = std::log2(err(257) / err(513));
  CHECK(order > 3.7);
  CHECK(order < 4.4);
}

TEST_CASE("too few samples are rejected") {
  std::vector<double> f{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(cumulative_integral(std::span<const double>(f), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(differentiate(std::span<const double>(f), 0.1), std::invalid_argument);
}

}
