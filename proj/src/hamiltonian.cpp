#include "adia/hamiltonian.hpp"

#include <stdexcept>

#include "adia/errors.hpp"

namespace adia {
namespace {

constexpr double kHermitianTol = 1e-12;

bool is_real(const Matrix& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

void require_hermitian(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw InvalidFamily(std::string(what) + " is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol * scale) {
    throw InvalidFamily(std::string(what) + " is not Hermitian (asymmetry " +
                        std::to_string(asym) + ")");
  }
}

}  // namespace

HamiltonianFamily::HamiltonianFamily(Index dimension, Evaluator eval, int max_derivative,
                                     bool real_symmetric, std::string name)
    : dim_(dimension),
      eval_(std::move(eval)),
      max_deriv_(max_derivative),
      real_(real_symmetric),
      name_(std::move(name)) {
  if (dim_ < 2) throw InvalidFamily("Hamiltonian family needs dimension >= 2");
  if (!eval_) throw InvalidFamily("Hamiltonian family has no evaluator");
}

Matrix HamiltonianFamily::operator()(double s, int order) const {
  if (order < 0 || order > max_deriv_) {
    throw std::out_of_range("derivative order " + std::to_string(order) +
                            " exceeds family maximum " + std::to_string(max_deriv_));
  }
  Matrix h = eval_(s, order);
  if (h.rows() != dim_ || h.cols() != dim_) throw InvalidFamily("evaluator returned wrong shape");
  require_hermitian(h, "H^(j)(s)");
  return h;
}

HamiltonianFamily interpolating(const Matrix& h_initial, const Matrix& h_final,
                                const Schedule& schedule, std::string name) {
  require_hermitian(h_initial, "H_i");
  require_hermitian(h_final, "H_f");
  if (h_initial.rows() != h_final.rows()) throw InvalidFamily("H_i and H_f differ in dimension");
  const bool real = is_real(h_initial) && is_real(h_final);
  const Matrix diff = h_final - h_initial;
  return HamiltonianFamily(
      h_initial.rows(),
      [h_initial, diff, schedule](double s, int order) -> Matrix {
        const double f = schedule(s, order);
        if (order == 0) return h_initial + f * diff;
        return f * diff;
      },
      12, real, std::move(name));
}

HamiltonianFamily constant_family(const Matrix& h0) {
  require_hermitian(h0, "H_0");
  return HamiltonianFamily(
      h0.rows(),
      [h0](double, int order) -> Matrix {
        if (order == 0) return h0;
        return Matrix::Zero(h0.rows(), h0.cols());
      },
      12, is_real(h0), "constant");
}

}  // namespace adia
