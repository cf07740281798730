#include <doctest.h>

#include <cmath>
#include <vector>

#include "adia/errors.hpp"
#include "adia/grover.hpp"
#include "adia/spectral.hpp"

using namespace adia;

namespace {

// complex three-level family, nondegenerate on [0, 1]
HamiltonianFamily three_level() {
  Matrix h0(3, 3);
  h0 << 0.0, 0.2, 0.0, 0.2, 1.0, Complex(0.1, 0.1), 0.0, Complex(0.1, -0.1), 2.5;
  Matrix h1(3, 3);
  h1 << 0.5, Complex(0.0, 0.4), 0.3, Complex(0.0, -0.4), -0.2, 0.1, 0.3, 0.1, -0.6;
  Matrix h2(3, 3);
  h2 << 0.1, 0.0, Complex(0.2, 0.05), 0.0, 0.3, 0.0, Complex(0.2, -0.05), 0.0, 0.0;
  return HamiltonianFamily(3, [=](double s, int order) -> Matrix {
    switch (order) {
      case 0: return h0 + s * h1 + s * s * h2;
      case 1: return h1 + 2.0 * s * h2;
      case 2: return 2.0 * h2;
      default: return Matrix::Zero(3, 3);
    }
  }, 12);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("eigenframe reconstructs H") {
  const HamiltonianFamily fam = three_level();
  for (double s : {0.0, 0.31, 1.0}) {
    const SpectralFrame fr = spectral_frame(fam, s);
    const Matrix rebuilt = fr.vectors * fr.energies.cast<Complex>().asDiagonal() * fr.vectors.adjoint();
    CHECK((rebuilt - fam(s)).norm() < 1e-12);
    CHECK((fr.vectors.adjoint() * fr.vectors - Matrix::Identity(3, 3)).norm() < 1e-12);
    for (Index n = 1; n < 3; ++n) CHECK(fr.energies(n) > fr.energies(n - 1));
  }
}

TEST_CASE("couplings are anti-Hermitian with zero diagonal") {
  const SpectralFrame fr = spectral_frame(three_level(), 0.42);
  CHECK((fr.couplings + fr.couplings.adjoint()).norm() < 1e-12);
  for (Index n = 0; n < 3; ++n) CHECK(std::abs(fr.couplings(n, n)) == 0.0);
  const Matrix lam = fr.lambda_matrix();
  CHECK(std::abs(lam(1, 0) - fr.couplings(1, 0) / fr.gap(1, 0)) < 1e-14);
}

TEST_CASE("Hellmann-Feynman: dE_n/ds equals <n|dH|n>") {
  const HamiltonianFamily fam = three_level();
  const double s = 0.6;
  const double h = 1e-5;
  const SpectralFrame fr = spectral_frame(fam, s);
  const RealVector ep = eigenvalues(fam, s + h);
  const RealVector em = eigenvalues(fam, s - h);
  for (Index n = 0; n < 3; ++n) {
    CHECK(fr.hdot(n, n).real() == doctest::Approx((ep(n) - em(n)) / (2.0 * h)).epsilon(1e-8));
  }
}

TEST_CASE("finite-difference coupling oracle for the search model") {
  const HamiltonianFamily fam = grover_family(8, Schedule::linear());
  const double s = 0.3;
  const double h = 1e-5;
  const SpectralFrame mid = spectral_frame(fam, s);
  const SpectralFrame plus = spectral_frame(fam, s + h, &mid);
  const SpectralFrame minus = spectral_frame(fam, s - h, &mid);
  const Vector dphi0 = (plus.state(0) - minus.state(0)) / (2.0 * h);
  const Complex m10 = mid.state(1).dot(dphi0);
  CHECK(std::abs(m10 - mid.couplings(1, 0)) < 1e-8);
  // parallel transport
  CHECK(std::abs(mid.state(0).dot(dphi0)) < 1e-8);
  // two-level closed form |lambda_10| = sqrt(N-1)/N fdot / Delta^3
  CHECK(std::abs(mid.lambda(1, 0)) == doctest::Approx(grover::lambda10(8.0, Schedule::linear(), s)).epsilon(1e-12));
}

TEST_CASE("aligned frames depart from the path at second order") {
  const HamiltonianFamily fam = three_level();
  auto defect = [&](double h) {
    const SpectralFrame a = spectral_frame(fam, 0.5);
    const SpectralFrame b = spectral_frame(fam, 0.5 + h, &a);
    double worst = 0.0;
    for (Index n = 0; n < 3; ++n) worst = std::max(worst, std::abs(1.0 - a.state(n).dot(b.state(n))));
    return worst;
  };
  const double ratio = defect(1e-3) / defect(5e-4);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("frame path stays continuous") {
  const FramePath path(three_level(), 65);
  CHECK(path.nodes().size() == 65);
  for (std::size_t i = 1; i < path.nodes().size(); ++i) {
    for (Index n = 0; n < 3; ++n) {
      CHECK(std::abs(path.nodes()[i - 1].state(n).dot(path.nodes()[i].state(n))) > 0.99);
      CHECK(path.nodes()[i - 1].state(n).dot(path.nodes()[i].state(n)).real() > 0.0);
    }
  }
  const SpectralFrame mid = path.at(0.5);
  CHECK(std::abs(mid.state(0).dot(path.nodes()[32].state(0)) - 1.0) < 1e-12);
}

TEST_CASE("dynamical phase against a fine Simpson rule") {
  const double N = 32.0;
  const Schedule f = Schedule::linear();
  const int n = 20000;
  double simpson = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    simpson += w * grover::gap(N, f(static_cast<double>(i) / n));
  }
  simpson /= 3.0 * n;
  const HamiltonianFamily fam = grover_family(32, f);
  CHECK(relative_phase(fam, 1, 0, 1.0) == doctest::Approx(simpson).epsilon(1e-9));
  CHECK(dynamical_phase(fam, 1, 1.0) - dynamical_phase(fam, 0, 1.0) == doctest::Approx(simpson).epsilon(1e-9));
}

TEST_CASE("lambda derivative against finite differences") {
  const HamiltonianFamily fam = three_level();
  const double s = 0.45;
  const double h = 1e-5;
  const SpectralFrame mid = spectral_frame(fam, s);
  const SpectralFrame plus = spectral_frame(fam, s + h, &mid);
  const SpectralFrame minus = spectral_frame(fam, s - h, &mid);
  const Matrix fd = (plus.lambda_matrix() - minus.lambda_matrix()) / (2.0 * h);
  CHECK((lambda_derivative(fam, mid) - fd).norm() < 1e-7);
}

TEST_CASE("degenerate ground level is rejected") {
  RealVector d(3);
  d << 1.0, 1.0, 2.0;
  const HamiltonianFamily fam = constant_family(d.cast<Complex>().asDiagonal());
  CHECK_THROWS_AS(spectral_frame(fam, 0.5), DegenerateGroundGap);
}

TEST_CASE("degenerate excited levels are resolved") {
  // full search model: N-2 excited levels stay degenerate throughout
  const HamiltonianFamily fam = grover_family(6, Schedule::linear(), GroverMode::fullN);
  const SpectralFrame fr = spectral_frame(fam, 0.4);
  CHECK(fr.size() == 6);
  CHECK(fr.degenerate(2, 3));
  CHECK(std::abs(fr.couplings(2, 3)) == 0.0);
  CHECK((fr.couplings + fr.couplings.adjoint()).norm() < 1e-12);
}

}
