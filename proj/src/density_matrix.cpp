#include "nvphoton/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nvphoton {

namespace {

constexpr double kWeightSumTol = 1e-9;

void check_weights(std::span<const WeightedState> ensemble) {
  if (ensemble.empty()) {
    throw std::invalid_argument("empty ensemble");
  }
  double sum = 0.0;
  for (const WeightedState& w : ensemble) {
    if (!(w.weight >= 0.0)) {
      throw std::invalid_argument("ensemble weights must be non-negative");
    }
    if (w.state.layout() != ensemble.front().state.layout()) {
      throw std::invalid_argument("ensemble states must share one layout");
    }
    sum += w.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw std::invalid_argument("ensemble weights must sum to 1");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(Layout layout, MatrixX elements) : layout_(std::move(layout)), elements_(std::move(elements)) {
  validate_layout(layout_);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << layout_.size());
  if (elements_.rows() != dim || elements_.cols() != dim) {
    throw std::invalid_argument("density matrix must be 2^n x 2^n");
  }
  if ((elements_ - elements_.adjoint()).cwiseAbs().maxCoeff() > kMatrixTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(elements_.trace() - Complex(1.0)) > kMatrixTol) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& state) {
  const VectorX v = state.to_eigen();
  return DensityMatrix(state.layout(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Layout layout) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << layout.size());
  return DensityMatrix(std::move(layout), MatrixX::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (elements_ * elements_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<MatrixX> es(elements_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool DensityMatrix::satisfies_invariants() const {
  return (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff() <= kMatrixTol &&
         std::abs(elements_.trace() - Complex(1.0)) <= kMatrixTol && min_eigenvalue() >= kPsdFloor;
}

DensityMatrix density_from_ensemble(std::span<const WeightedState> ensemble) {
  check_weights(ensemble);
  const StateVector& first = ensemble.front().state;
  const auto dim = static_cast<Eigen::Index>(first.dimension());
  MatrixX phi(dim, static_cast<Eigen::Index>(ensemble.size()));
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    phi.col(static_cast<Eigen::Index>(i)) = std::sqrt(ensemble[i].weight) * ensemble[i].state.to_eigen();
  }
  MatrixX rho = MatrixX::Zero(dim, dim);
  rho.selfadjointView<Eigen::Lower>().rankUpdate(phi);
  rho = rho.selfadjointView<Eigen::Lower>();
  return DensityMatrix(first.layout(), std::move(rho));
}

DensityMatrix density_from_ensemble(std::span<const StateVector> states) {
  std::vector<WeightedState> ensemble;
  ensemble.reserve(states.size());
  const double w = states.empty() ? 0.0 : 1.0 / static_cast<double>(states.size());
  for (const StateVector& s : states) {
    ensemble.push_back({w, s});
  }
  return density_from_ensemble(ensemble);
}

namespace reference {

DensityMatrix density_from_ensemble_serial(std::span<const WeightedState> ensemble) {
  check_weights(ensemble);
  const StateVector& first = ensemble.front().state;
  const std::size_t dim = first.dimension();
  MatrixX rho = MatrixX::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const WeightedState& w : ensemble) {
    const auto a = w.state.amplitudes();
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += w.weight * a[r] * std::conj(a[c]);
      }
    }
  }
  return DensityMatrix(first.layout(), std::move(rho));
}

}  // namespace reference

double fidelity_pure_mixed(const StateVector& ideal, const DensityMatrix& rho) {
  if (ideal.layout() != rho.layout()) {
    throw std::invalid_argument("fidelity: layout mismatch");
  }
  const VectorX v = ideal.to_eigen();
  const double f = v.dot(rho.elements() * v).real();
  return std::clamp(f, 0.0, 1.0);
}

DensityMatrix reduced_density(const StateVector& state, std::span<const SubsystemLabel> keep) {
  if (keep.empty()) {
    throw std::invalid_argument("reduced_density: nothing to keep");
  }
  const std::size_t n = state.num_subsystems();
  std::vector<std::size_t> keep_pos;
  std::vector<bool> kept(n, false);
  for (const SubsystemLabel& l : keep) {
    const std::size_t p = state.position(l);
    if (kept[p]) {
      throw std::invalid_argument("reduced_density: duplicate label");
    }
    kept[p] = true;
    keep_pos.push_back(p);
  }
  std::vector<std::size_t> trace_pos;
  for (std::size_t p = 0; p < n; ++p) {
    if (!kept[p]) {
      trace_pos.push_back(p);
    }
  }
  const auto rows = static_cast<Eigen::Index>(std::size_t{1} << keep_pos.size());
  const auto cols = static_cast<Eigen::Index>(std::size_t{1} << trace_pos.size());
  MatrixX m(rows, cols);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::size_t r = 0;
    for (std::size_t p : keep_pos) {
      r = (r << 1) | ((i >> (n - 1 - p)) & 1U);
    }
    std::size_t c = 0;
    for (std::size_t p : trace_pos) {
      c = (c << 1) | ((i >> (n - 1 - p)) & 1U);
    }
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amps[i];
  }
  const double nrm2 = m.squaredNorm();
  MatrixX rho = m * m.adjoint() / nrm2;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(Layout(keep.begin(), keep.end()), std::move(rho));
}

}  // namespace nvphoton
