#include <doctest.h>

#include "adia/errors.hpp"
#include "adia/hamiltonian.hpp"
#include "adia/schedule.hpp"

using namespace adia;

TEST_SUITE("hamiltonian") {

TEST_CASE("interpolating family and its derivatives") {
  Matrix hi(2, 2);
  hi << 1.0, 0.5, 0.5, -1.0;
  Matrix hf(2, 2);
  hf << 0.0, Complex(0.0, 0.3), Complex(0.0, -0.3), 2.0;
  const HamiltonianFamily fam = interpolating(hi, hf, Schedule::beta(1));
  CHECK_FALSE(fam.real_symmetric());
  CHECK(fam.dimension() == 2);
  const Schedule f = Schedule::beta(1);
  const double s = 0.3;
  CHECK((fam(s) - ((1.0 - f(s)) * hi + f(s) * hf)).norm() < 1e-14);
  CHECK((fam(s, 1) - f(s, 1) * (hf - hi)).norm() < 1e-14);
  CHECK((fam(s, 2) - f(s, 2) * (hf - hi)).norm() < 1e-14);
}

TEST_CASE("real symmetric detection") {
  const Matrix hi = Matrix::Identity(3, 3);
  Matrix hf = Matrix::Zero(3, 3);
  hf(0, 1) = hf(1, 0) = 1.0;
  CHECK(interpolating(hi, hf, Schedule::linear()).real_symmetric());
}

TEST_CASE("derivative orders beyond the family raise out_of_range") {
  const HamiltonianFamily fam = constant_family(Matrix::Identity(2, 2));
  CHECK_THROWS_AS(fam(0.5, fam.max_derivative() + 1), std::out_of_range);
  CHECK_THROWS_AS(fam(0.5, -1), std::out_of_range);
}

TEST_CASE("non-Hermitian evaluations are rejected") {
  const HamiltonianFamily fam(2, [](double, int) {
    Matrix m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    return m;
  }, 3);
  CHECK_THROWS_AS(fam(0.2), InvalidFamily);
}

TEST_CASE("wrong shape and dimension are rejected") {
  CHECK_THROWS_AS(HamiltonianFamily(1, [](double, int) { return Matrix::Identity(1, 1); }, 2), InvalidFamily);
  const HamiltonianFamily fam(3, [](double, int) { return Matrix::Identity(2, 2); }, 2);
  CHECK_THROWS_AS(fam(0.1), InvalidFamily);
}

}
