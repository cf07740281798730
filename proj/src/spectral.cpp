#include "adia/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "adia/errors.hpp"

namespace adia {
namespace {

struct Eigensystem {
  RealVector values;
  Matrix vectors;
};

Eigensystem diagonalize(const Matrix& h, bool real) {
  if (real) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.real());
    return {es.eigenvalues(), es.eigenvectors().cast<Complex>()};
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

double degeneracy_threshold(const RealVector& energies) {
  const double scale = std::max(energies.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  return kDegeneracyRel * scale;
}

// Consecutive runs of (nearly) equal energies.
std::vector<int> energy_blocks(const RealVector& e, double thr) {
  std::vector<int> block(e.size(), 0);
  for (Index n = 1; n < e.size(); ++n) {
    block[n] = (e(n) - e(n - 1) <= thr) ? block[n - 1] : block[n - 1] + 1;
  }
  return block;
}

std::vector<std::pair<Index, Index>> ranges_of(const std::vector<int>& ids) {
  std::vector<std::pair<Index, Index>> out;
  Index begin = 0;
  for (Index n = 1; n <= static_cast<Index>(ids.size()); ++n) {
    if (n == static_cast<Index>(ids.size()) || ids[n] != ids[begin]) {
      out.emplace_back(begin, n);
      begin = n;
    }
  }
  return out;
}

// Splits the degenerate columns [begin, end) of v by the first derivative of H
// that acts nontrivially on them, ordering sub-levels as the energies separate
// when moving away from s (forwards, or backwards at s = 1). Unresolved groups
// get a shared id in `gauge`.
void resolve_block(const HamiltonianFamily& family, double s, bool backward, int first_order,
                   Matrix& v, Index begin, Index end, std::vector<int>& gauge, int& next_id) {
  const Index k = end - begin;
  if (k == 1) {
    gauge[begin] = next_id++;
    return;
  }
  // Higher derivatives are never needed to split the blocks of the models here.
  const int last_order = std::min(family.max_derivative(), 6);
  for (int j = first_order; j <= last_order; ++j) {
    const Matrix hj = family(s, j);
    const Matrix sub = v.middleCols(begin, k);
    const Matrix p = sub.adjoint() * hj * sub;
    const double scale = std::max(1.0, hj.cwiseAbs().maxCoeff());
    if (p.cwiseAbs().maxCoeff() <= 1e-10 * scale) continue;
    const Eigensystem es = diagonalize(0.5 * (p + p.adjoint()), family.real_symmetric());
    const double sign = (backward && (j % 2)) ? -1.0 : 1.0;
    std::vector<Index> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return sign * es.values(a) < sign * es.values(b);
    });
    Matrix rotated(v.rows(), k);
    RealVector keys(k);
    for (Index i = 0; i < k; ++i) {
      rotated.col(i) = sub * es.vectors.col(order[i]);
      keys(i) = sign * es.values(order[i]);
    }
    v.middleCols(begin, k) = rotated;
    const double thr = kDegeneracyRel * std::max(1.0, keys.cwiseAbs().maxCoeff());
    Index start = 0;
    for (Index i = 1; i <= k; ++i) {
      if (i == k || keys(i) - keys(i - 1) > thr) {
        resolve_block(family, s, backward, j + 1, v, begin + start, begin + i, gauge, next_id);
        start = i;
      }
    }
    return;
  }
  for (Index i = begin; i < end; ++i) gauge[i] = next_id;
  ++next_id;
}

// Makes the first entry of largest modulus real and positive.
void canonical_phase(Eigen::Ref<Vector> v) {
  const double vmax = v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a >= (1.0 - 1e-6) * vmax) {
      v *= std::conj(v(i)) / a;
      return;
    }
  }
}

void align(Matrix& v, const std::vector<int>& gauge, const SpectralFrame& prev, double s) {
  for (auto [begin, end] : ranges_of(gauge)) {
    const Index k = end - begin;
    const Matrix overlap = prev.vectors.middleCols(begin, k).adjoint() * v.middleCols(begin, k);
    if (k == 1) {
      const Complex o = overlap(0, 0);
      if (std::abs(o) < 0.5) {
        std::ostringstream msg;
        msg << "eigenvector " << begin << " lost between s=" << prev.s << " and s=" << s
            << " (overlap " << std::abs(o) << "); refine the frame grid";
        throw GridTooCoarse(msg.str());
      }
      v.col(begin) *= std::conj(o) / std::abs(o);
      continue;
    }
    // Orthogonal Procrustes: rotate the block onto the previous basis.
    Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix r = svd.matrixV() * svd.matrixU().adjoint();
    v.middleCols(begin, k) = v.middleCols(begin, k) * r;
  }
}

}  // namespace

Complex SpectralFrame::lambda(Index n, Index k) const {
  if (n == k || degenerate(n, k)) return 0.0;
  return couplings(n, k) / gap(n, k);
}

Matrix SpectralFrame::lambda_matrix() const {
  Matrix l = Matrix::Zero(size(), size());
  for (Index n = 0; n < size(); ++n)
    for (Index k = 0; k < size(); ++k) l(n, k) = lambda(n, k);
  return l;
}

SpectralFrame spectral_frame(const HamiltonianFamily& family, double s, const SpectralFrame* prev) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::out_of_range("s outside [0, 1]");
  const Matrix h = family(s, 0);
  Eigensystem es = diagonalize(h, family.real_symmetric());
  const double thr = degeneracy_threshold(es.values);
  if (es.values(1) - es.values(0) <= thr) {
    std::ostringstream msg;
    msg << "ground gap " << es.values(1) - es.values(0) << " at s=" << s
        << " is below the degeneracy threshold " << thr;
    throw DegenerateGroundGap(msg.str());
  }

  SpectralFrame frame;
  frame.s = s;
  frame.energies = es.values;
  frame.energy_block = energy_blocks(es.values, thr);
  frame.gauge_block.assign(es.values.size(), 0);
  const bool backward = s >= 1.0 - 1e-12;
  int next_id = 0;
  for (auto [begin, end] : ranges_of(frame.energy_block)) {
    resolve_block(family, s, backward, 1, es.vectors, begin, end, frame.gauge_block, next_id);
  }

  if (prev && prev->size() == es.values.size()) {
    align(es.vectors, frame.gauge_block, *prev, s);
  } else {
    for (auto [begin, end] : ranges_of(frame.gauge_block)) {
      if (end - begin == 1) canonical_phase(es.vectors.col(begin));
    }
  }
  if (family.real_symmetric()) es.vectors = es.vectors.real().cast<Complex>();
  frame.vectors = std::move(es.vectors);

  const Index d = frame.size();
  frame.hdot = frame.vectors.adjoint() * family(s, 1) * frame.vectors;
  frame.couplings = Matrix::Zero(d, d);
  const double coupling_tol = 1e-9 * std::max(1.0, frame.hdot.cwiseAbs().maxCoeff());
  for (Index n = 0; n < d; ++n) {
    for (Index k = 0; k < d; ++k) {
      if (n == k) continue;
      if (frame.degenerate(n, k)) {
        if (std::abs(frame.hdot(n, k)) > coupling_tol) {
          std::ostringstream msg;
          msg << "levels " << n << " and " << k << " are degenerate at s=" << s
              << " but couple through dH/ds (|<n|dH|k>| = " << std::abs(frame.hdot(n, k)) << ")";
          throw DegenerateCoupling(msg.str());
        }
        continue;
      }
      frame.couplings(n, k) = -frame.hdot(n, k) / frame.gap(n, k);
    }
  }
  return frame;
}

Vector ground_state(const HamiltonianFamily& family, double s) {
  const Eigensystem es = diagonalize(family(s, 0), family.real_symmetric());
  if (es.values(1) - es.values(0) <= degeneracy_threshold(es.values)) {
    std::ostringstream msg;
    msg << "ground gap vanishes at s=" << s;
    throw DegenerateGroundGap(msg.str());
  }
  return es.vectors.col(0);
}

RealVector eigenvalues(const HamiltonianFamily& family, double s) {
  const Matrix h = family(s, 0);
  if (family.real_symmetric()) {
    return Eigen::SelfAdjointEigenSolver<RealMatrix>(h.real(), Eigen::EigenvaluesOnly).eigenvalues();
  }
  return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

Matrix lambda_derivative(const HamiltonianFamily& family, const SpectralFrame& frame) {
  const Matrix& a = frame.hdot;
  const Matrix& m = frame.couplings;
  const Matrix b = frame.vectors.adjoint() * family(frame.s, 2) * frame.vectors;
  // d/ds <phi_n|dH|phi_k> with d phi_k/ds = sum_j phi_j M_jk.
  const Matrix adot = m.adjoint() * a + b + a * m;
  const Index d = frame.size();
  Matrix out = Matrix::Zero(d, d);
  for (Index n = 0; n < d; ++n) {
    for (Index k = 0; k < d; ++k) {
      if (n == k || frame.degenerate(n, k)) continue;
      const double gap = frame.gap(n, k);
      const double gap_dot = (a(n, n) - a(k, k)).real();
      out(n, k) = -adot(n, k) / (gap * gap) + 2.0 * a(n, k) * gap_dot / (gap * gap * gap);
    }
  }
  return out;
}

double dynamical_phase(const HamiltonianFamily& family, Index n, double s, double tol) {
  if (n < 0 || n >= family.dimension()) throw std::out_of_range("level index");
  QuadratureOptions opt;
  opt.abs_tol = tol;
  return integrate([&](double x) { return eigenvalues(family, x)(n); }, 0.0, s, opt);
}

double relative_phase(const HamiltonianFamily& family, Index n, Index m, double s, double tol) {
  if (n < 0 || n >= family.dimension() || m < 0 || m >= family.dimension()) {
    throw std::out_of_range("level index");
  }
  QuadratureOptions opt;
  opt.abs_tol = tol;
  return integrate(
      [&](double x) {
        const RealVector e = eigenvalues(family, x);
        return e(n) - e(m);
      },
      0.0, s, opt);
}

FramePath::FramePath(HamiltonianFamily family, int nodes) : family_(std::move(family)) {
  if (nodes < 2) throw std::invalid_argument("FramePath needs at least 2 nodes");
  frames_.reserve(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double s = (i == nodes - 1) ? 1.0 : static_cast<double>(i) / (nodes - 1);
    frames_.push_back(spectral_frame(family_, s, frames_.empty() ? nullptr : &frames_.back()));
  }
}

SpectralFrame FramePath::at(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw std::out_of_range("s outside [0, 1]");
  const auto n = static_cast<double>(frames_.size() - 1);
  const auto i = static_cast<std::size_t>(std::lround(s * n));
  const SpectralFrame& node = frames_[i];
  if (node.s == s) return node;
  return spectral_frame(family_, s, &node);
}

}  // namespace adia
