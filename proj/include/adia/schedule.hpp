#pragma once

#include <functional>
#include <memory>
#include <string>

namespace adia {

enum class ScheduleKind { linear, optimal, beta, custom };

std::string to_string(ScheduleKind kind);

/// A driving schedule f(s) on [0, 1] with f(0) = 0 and f(1) = 1, together with
/// its s-derivatives. Cheap to copy; the evaluator is shared.
class Schedule {
 public:
  using Evaluator = std::function<double(double s, int order)>;

  /// f(s) = s.
  static Schedule linear();

  /// The constant-Fisher-speed interpolation for database size N:
  /// f(s) = 1/2 [1 + tan(arctan(sqrt(N-1)) (2s-1)) / sqrt(N-1)].
  static Schedule optimal(double N);

  /// Regularized incomplete beta function I_s(p+1, p+1): the lowest-degree
  /// polynomial with f^(j)(0) = f^(j)(1) = 0 for j = 1..p.
  static Schedule beta(int p);

  static Schedule custom(std::string name, Evaluator eval);

  /// The order-th derivative of f at s.
  double operator()(double s, int order = 0) const { return eval_(s, order); }

  ScheduleKind kind() const noexcept { return kind_; }
  /// Boundary-cancelation order: p for beta schedules, 0 otherwise.
  int cancelation_order() const noexcept { return p_; }
  const std::string& name() const noexcept { return name_; }
  /// Database size the optimal schedule was built for (0 for others).
  double size_parameter() const noexcept { return n_; }

 private:
  Schedule(ScheduleKind kind, std::string name, int p, double n, Evaluator eval)
      : kind_(kind), name_(std::move(name)), p_(p), n_(n), eval_(std::move(eval)) {}

  ScheduleKind kind_;
  std::string name_;
  int p_ = 0;
  double n_ = 0.0;
  Evaluator eval_;
};

/// Checks f(0) = 0, f(1) = 1 and monotonicity on `samples` points; for beta
/// schedules also the vanishing endpoint derivatives. Throws InvalidFamily.
void validate_schedule(const Schedule& schedule, int samples = 1000);

}  // namespace adia
