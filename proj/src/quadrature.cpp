#include "adia/quadrature.hpp"

#include <cmath>
#include <exception>
#include <memory>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "adia/errors.hpp"

namespace adia {
namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

struct Trampoline {
  const std::function<double(double)>* f;
  std::exception_ptr error;
};

double call(double x, void* params) {
  auto* t = static_cast<Trampoline*>(params);
  if (t->error) return 0.0;
  try {
    return (*t->f)(x);
  } catch (...) {
    // GSL cannot unwind C++ exceptions; park it and rethrow after the call.
    t->error = std::current_exception();
    return 0.0;
  }
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options) {
  if (a == b) return 0.0;
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;

  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> workspace(
      gsl_integration_workspace_alloc(options.max_intervals));
  Trampoline t{&f, nullptr};
  gsl_function fn{&call, &t};
  double result = 0.0;
  double abserr = 0.0;
  const int status = gsl_integration_qag(&fn, a, b, options.abs_tol, options.rel_tol,
                                         options.max_intervals,
                                         GSL_INTEG_GAUSS21, workspace.get(), &result, &abserr);
  if (t.error) std::rethrow_exception(t.error);
  if (status != GSL_SUCCESS || !std::isfinite(result)) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not reach abs tol " << options.abs_tol
        << " (estimated error " << abserr << "): " << gsl_strerror(status);
    throw QuadratureFailure(msg.str());
  }
  return result;
}

}  // namespace adia
