#ifndef NVPHOTON_DENSITY_MATRIX_HPP
#define NVPHOTON_DENSITY_MATRIX_HPP

#include <span>
#include <vector>

#include "nvphoton/state_vector.hpp"

namespace nvphoton {

/// Mixed state over the same register convention as StateVector.
class DensityMatrix {
 public:
  /// Checks shape, Hermiticity (1e-10) and unit trace (1e-10).
  DensityMatrix(Layout layout, MatrixX elements);

  static DensityMatrix from_pure(const StateVector& state);
  static DensityMatrix maximally_mixed(Layout layout);

  const Layout& layout() const { return layout_; }
  const MatrixX& elements() const { return elements_; }
  std::size_t dimension() const { return static_cast<std::size_t>(elements_.rows()); }

  Complex trace() const { return elements_.trace(); }
  double purity() const;
  /// Smallest eigenvalue; O(d^3).
  double min_eigenvalue() const;
  /// Full invariant check including positive semidefiniteness.
  bool satisfies_invariants() const;

 private:
  Layout layout_;
  MatrixX elements_;
};

struct WeightedState {
  double weight = 0.0;
  StateVector state;
};

/// sum_i w_i |psi_i><psi_i|. Weights must be non-negative and sum to 1
/// within 1e-9; all states must share one layout.
DensityMatrix density_from_ensemble(std::span<const WeightedState> ensemble);

/// Equal-weight mixture of `states`.
DensityMatrix density_from_ensemble(std::span<const StateVector> states);

namespace reference {
/// Serial rank-1 accumulation, kept to cross-check the blocked product.
DensityMatrix density_from_ensemble_serial(std::span<const WeightedState> ensemble);
}  // namespace reference

/// <psi|rho|psi>, clamped to [0, 1]. Throws on layout mismatch.
double fidelity_pure_mixed(const StateVector& ideal, const DensityMatrix& rho);

/// Reduced density matrix of `keep` (in the given order).
DensityMatrix reduced_density(const StateVector& state, std::span<const SubsystemLabel> keep);

}  // namespace nvphoton

#endif  // NVPHOTON_DENSITY_MATRIX_HPP
