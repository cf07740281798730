#include "adia/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>

#include "adia/errors.hpp"
#include "adia/quadrature.hpp"

namespace adia {
namespace {

struct Solution {
  std::vector<std::vector<Matrix>> b;
  std::vector<RealVector> omega;
};

std::vector<Complex> series(const std::vector<Matrix>& table, Index n, Index m) {
  std::vector<Complex> out(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) out[i] = table[i](n, m);
  return out;
}

Solution solve(const std::vector<const SpectralFrame*>& frames, double h, int max_order) {
  const std::size_t g = frames.size();
  const Index d = frames.front()->size();
  Solution sol;

  std::vector<double> gaps(g);
  sol.omega.assign(g, RealVector::Zero(d));
  for (Index n = 1; n < d; ++n) {
    for (std::size_t i = 0; i < g; ++i) gaps[i] = frames[i]->gap(n, 0);
    const std::vector<double> w = cumulative_integral(std::span<const double>(gaps), h);
    for (std::size_t i = 0; i < g; ++i) sol.omega[i](n) = w[i];
  }

  Matrix zeroth = Matrix::Zero(d, d);
  zeroth(0, 0) = 1.0;
  sol.b.push_back(std::vector<Matrix>(g, zeroth));

  for (int p = 0; p < max_order; ++p) {
    const std::vector<Matrix>& prev = sol.b[p];
    std::vector<Matrix> next(g, Matrix::Zero(d, d));
    for (std::size_t i = 0; i < g; ++i) next[i] = frames[i]->couplings * prev[i];
    for (Index n = 0; n < d; ++n) {
      for (Index m = 0; m < d; ++m) {
        if (n == m) continue;
        const std::vector<Complex> f = series(prev, n, m);
        const std::vector<Complex> df = differentiate(std::span<const Complex>(f), h);
        for (std::size_t i = 0; i < g; ++i) {
          // Degenerate pairs have identically vanishing numerators in the
          // families we accept (spectral_frame verifies <n|dH|k> = 0).
          next[i](n, m) = frames[i]->degenerate(n, m)
                              ? Complex(0.0)
                              : (df[i] + next[i](n, m)) / frames[i]->gap(n, m);
        }
      }
    }
    // d/ds b_nn + sum_{k != n} M_nk b_kn = 0 with b_nn(0) = -sum_{m != n} b_nm(0).
    for (Index n = 0; n < d; ++n) {
      std::vector<Complex> rhs(g);
      for (std::size_t i = 0; i < g; ++i) {
        rhs[i] = (frames[i]->couplings.row(n) * next[i].col(n)).value();
      }
      const std::vector<Complex> integral = cumulative_integral(std::span<const Complex>(rhs), h);
      Complex initial = 0.0;
      for (Index m = 0; m < d; ++m) {
        if (m != n) initial -= next[0](n, m);
      }
      for (std::size_t i = 0; i < g; ++i) next[i](n, n) = initial - integral[i];
    }
    sol.b.push_back(std::move(next));
  }
  return sol;
}

}  // namespace

PhaseSeries CoefficientTable::aggregate_series(Index n, int p, std::size_t i) const {
  if (p < 0 || p > max_order) throw std::out_of_range("order outside table");
  if (i >= grid.size()) throw std::out_of_range("grid index outside table");
  PhaseSeries out;
  for (Index m = 0; m < dimension(); ++m) out.add(b[p][i](n, m), omega[i](n) - omega[i](m));
  return out;
}

Complex CoefficientTable::aggregate(Index n, int p, std::size_t i, double T) const {
  return aggregate_series(n, p, i).evaluate(T);
}

CoefficientTable recurrence_table(const HamiltonianFamily& family, int max_order,
                                  int grid_points) {
  if (max_order < 1 || max_order > kMaxRecurrenceOrder) {
    throw std::invalid_argument("recurrence order must lie in 1.." +
                                std::to_string(kMaxRecurrenceOrder));
  }
  if (grid_points < 17 || grid_points % 2 == 0) {
    throw std::invalid_argument("recurrence grid needs an odd number (>= 17) of points");
  }
  CoefficientTable table;
  table.max_order = max_order;
  table.h = 1.0 / (grid_points - 1);
  table.grid.resize(grid_points);
  table.frames.reserve(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    const double s = (i == grid_points - 1) ? 1.0 : i * table.h;
    table.grid[i] = s;
    table.frames.push_back(
        spectral_frame(family, s, table.frames.empty() ? nullptr : &table.frames.back()));
  }

  std::vector<const SpectralFrame*> fine;
  std::vector<const SpectralFrame*> coarse;
  for (int i = 0; i < grid_points; ++i) {
    fine.push_back(&table.frames[i]);
    if (i % 2 == 0) coarse.push_back(&table.frames[i]);
  }
  Solution f = solve(fine, table.h, max_order);
  const Solution c = solve(coarse, 2.0 * table.h, max_order);

  table.grid_error.assign(max_order + 1, 0.0);
  for (int p = 1; p <= max_order; ++p) {
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      scale = std::max(scale, f.b[p][2 * i].cwiseAbs().maxCoeff());
      diff = std::max(diff, (f.b[p][2 * i] - c.b[p][i]).cwiseAbs().maxCoeff());
    }
    // Fourth-order schemes: the fine grid error is about 1/15 of the change.
    table.grid_error[p] =
        std::max(diff / 15.0, 64.0 * std::numeric_limits<double>::epsilon() * scale);
    if (diff > kGridTolerance * std::max(scale, std::numeric_limits<double>::min())) {
      std::ostringstream msg;
      msg << "order-" << p << " coefficients change by " << diff << " (scale " << scale
          << ") when the grid of " << grid_points << " points is halved";
      throw GridTooCoarse(msg.str());
    }
  }
  table.b = std::move(f.b);
  table.omega = std::move(f.omega);
  return table;
}

DistanceExpansion distance_expansion(const CoefficientTable& table, double T, int p) {
  return distance_expansion(table, T, p, table.last());
}

DistanceExpansion distance_expansion(const CoefficientTable& table, double T, int p,
                                     std::size_t i) {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  if (p < 0 || p + 2 > table.max_order) {
    throw std::invalid_argument("table must hold orders up to p + 2");
  }
  const Index d = table.dimension();
  for (int q = 1; q <= p; ++q) {
    const double limit = 10.0 * table.grid_error[q];
    for (Index n = 1; n < d; ++n) {
      const double mag = table.aggregate_series(n, q, i).max_modulus();
      if (mag > limit) {
        std::ostringstream msg;
        msg << "order-" << q << " coefficient of level " << n << " is " << mag
            << ", not below the grid error bound " << limit;
        throw BoundaryConditionViolated(msg.str());
      }
    }
  }
  double s2 = 0.0;
  double cross = 0.0;
  double next2 = 0.0;
  for (Index n = 1; n < d; ++n) {
    const Complex lead = table.aggregate(n, p + 1, i, T);
    const Complex nxt = table.aggregate(n, p + 2, i, T);
    s2 += std::norm(lead);
    cross += std::imag(std::conj(lead) * nxt);
    next2 += std::norm(nxt);
  }
  const double tl = std::pow(T, p + 1);
  DistanceExpansion out;
  // A vanishing leading order (resonant T) makes the next order the first one.
  if (s2 <= std::pow(10.0 * table.grid_error[p + 1], 2)) {
    out.leading = 0.0;
    out.next = std::sqrt(next2) / (tl * T);
    return out;
  }
  const double root = std::sqrt(s2);
  out.leading = root / tl;
  double correction = cross / root;
  if (p == 0) correction -= root * std::imag(table.aggregate(0, 1, i, T));
  out.next = -correction / (tl * T);
  return out;
}

}  // namespace adia
