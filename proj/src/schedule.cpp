#include "adia/schedule.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "adia/errors.hpp"

namespace adia {
namespace {

using Poly = std::vector<double>;  // coefficients, lowest power first

double horner(const Poly& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(const Poly& c) {
  if (c.size() <= 1) return {0.0};
  Poly d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return d;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// d^j tan(x)/dx^j = P_j(tan x) with P_0 = t and P_{j+1} = P_j'(t) (1 + t^2).
std::vector<Poly> tan_derivative_polys(int max_order) {
  std::vector<Poly> polys{{0.0, 1.0}};
  for (int j = 0; j < max_order; ++j) {
    const Poly d = derivative(polys.back());
    Poly next(d.size() + 2, 0.0);
    for (std::size_t k = 0; k < d.size(); ++k) {
      next[k] += d[k];
      next[k + 2] += d[k];
    }
    polys.push_back(std::move(next));
  }
  return polys;
}

}  // namespace

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::linear:
      return "linear";
    case ScheduleKind::optimal:
      return "optimal";
    case ScheduleKind::beta:
      return "beta";
    case ScheduleKind::custom:
      return "custom";
  }
  return "unknown";
}

Schedule Schedule::linear() {
  return Schedule(ScheduleKind::linear, "linear", 0, 0.0, [](double s, int order) {
    if (order == 0) return s;
    return order == 1 ? 1.0 : 0.0;
  });
}

Schedule Schedule::optimal(double N) {
  if (!(N >= 2.0)) throw std::invalid_argument("optimal schedule needs N >= 2");
  const double r = std::sqrt(N - 1.0);
  const double a = std::atan(r);
  constexpr int kMaxOrder = 12;
  auto polys = std::make_shared<const std::vector<Poly>>(tan_derivative_polys(kMaxOrder));
  return Schedule(ScheduleKind::optimal, "optimal", 0, N, [=](double s, int order) {
    if (order < 0 || order > kMaxOrder) throw std::out_of_range("optimal schedule derivative order");
    const double t = std::tan(a * (2.0 * s - 1.0));
    if (order == 0) return 0.5 * (1.0 + t / r);
    return std::pow(2.0 * a, order) / (2.0 * r) * horner((*polys)[order], t);
  });
}

Schedule Schedule::beta(int p) {
  if (p < 0) throw std::invalid_argument("beta schedule needs p >= 0");
  // f_p(s) = sum_k C(p,k) (-1)^k s^(p+k+1) / (p+k+1) / B(p+1, p+1)
  const double inv_beta = factorial(2 * p + 1) / (factorial(p) * factorial(p));
  Poly base(2 * p + 2, 0.0);
  for (int k = 0; k <= p; ++k) {
    base[p + k + 1] = inv_beta * binomial(p, k) * ((k % 2) ? -1.0 : 1.0) / (p + k + 1);
  }
  auto derivs = std::make_shared<std::vector<Poly>>();
  derivs->push_back(base);
  while (derivs->back().size() > 1) derivs->push_back(derivative(derivs->back()));
  std::ostringstream name;
  name << "beta" << p;
  return Schedule(ScheduleKind::beta, name.str(), p, 0.0,
                  [derivs = std::shared_ptr<const std::vector<Poly>>(derivs)](double s, int order) {
                    if (order < 0) throw std::out_of_range("negative derivative order");
                    if (static_cast<std::size_t>(order) >= derivs->size()) return 0.0;
                    return horner((*derivs)[order], s);
                  });
}

Schedule Schedule::custom(std::string name, Evaluator eval) {
  return Schedule(ScheduleKind::custom, std::move(name), 0, 0.0, std::move(eval));
}

void validate_schedule(const Schedule& schedule, int samples) {
  constexpr double kTol = 1e-10;
  auto fail = [&](const std::string& what) {
    throw InvalidFamily("schedule '" + schedule.name() + "': " + what);
  };
  if (std::abs(schedule(0.0)) > kTol) fail("f(0) != 0");
  if (std::abs(schedule(1.0) - 1.0) > kTol) fail("f(1) != 1");
  double prev = schedule(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double f = schedule(static_cast<double>(i) / samples);
    if (f < prev - kTol) fail("not monotone nondecreasing");
    prev = f;
  }
  for (int j = 1; j <= schedule.cancelation_order(); ++j) {
    if (std::abs(schedule(0.0, j)) > kTol || std::abs(schedule(1.0, j)) > kTol) {
      fail("endpoint derivative of order " + std::to_string(j) + " does not vanish");
    }
  }
}

}  // namespace adia
