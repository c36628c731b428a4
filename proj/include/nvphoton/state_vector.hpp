#ifndef NVPHOTON_STATE_VECTOR_HPP
#define NVPHOTON_STATE_VECTOR_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nvphoton/rng.hpp"
#include "nvphoton/subsystem.hpp"
#include "nvphoton/types.hpp"

namespace nvphoton {

/// Pure state of a register of two-level subsystems.
///
/// Basis convention (bit-exact, golden files depend on it): the amplitude
/// index is big-endian in layout order, and each subsystem's bit is
///   Electron |+1>_e = 0, |-1>_e = 1
///   Nuclear  |+1>_n = 0, |-1>_n = 1
///   Photon   |sigma-> = 0, |sigma+> = 1
class StateVector {
 public:
  /// Throws std::invalid_argument on a bad layout or amplitude count.
  StateVector(Layout layout, std::vector<Complex> amplitudes);

  const Layout& layout() const { return layout_; }
  std::size_t num_subsystems() const { return layout_.size(); }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> mutable_amplitudes() { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }

  bool contains(SubsystemLabel label) const;
  /// Position of `label` in the layout; throws std::invalid_argument if absent.
  std::size_t position(SubsystemLabel label) const;

  double norm() const;
  /// <this|other>; layouts must be equal.
  Complex inner(const StateVector& other) const;
  VectorX to_eigen() const;

  /// Scales to unit norm; throws InvariantError on a (near) zero vector.
  void normalize();

  /// One line per amplitude: "index basis re im", 17 significant digits.
  std::string dump() const;

 private:
  Layout layout_;
  std::vector<Complex> amplitudes_;
};

/// Label string for a basis index, e.g. "e:+1 n:-1 p1:s+".
std::string basis_label(std::span<const SubsystemLabel> layout, std::size_t index);

StateVector make_basis_state(Layout layout, std::size_t basis_index);

/// Product state from one normalized 2-vector per subsystem.
StateVector make_product_state(Layout layout, std::span<const Vector2> factors);

/// Applies a 2x2 or 4x4 unitary on one or two targets. The first target is
/// the most significant bit of the gate's row/column index.
/// Throws std::invalid_argument for a non-unitary gate, wrong size or unknown target.
StateVector apply_gate(const StateVector& state, const MatrixX& gate, std::span<const SubsystemLabel> targets);
StateVector apply_gate(const StateVector& state, const Matrix2& gate, SubsystemLabel target);
StateVector apply_gate(const StateVector& state, const Matrix4& gate, SubsystemLabel first, SubsystemLabel second);

/// In-place variants for hot loops; same checks apart from unitarity.
void apply_gate_inplace(StateVector& state, const Matrix2& gate, SubsystemLabel target);
void apply_gate_inplace(StateVector& state, const Matrix4& gate, SubsystemLabel first, SubsystemLabel second);

/// Tensor product with a new subsystem appended at the end of the layout.
StateVector append_subsystem(const StateVector& state, SubsystemLabel label, const Vector2& sub_state);

/// Applies <bra| to `label` and drops it from the layout. The result is not
/// renormalized; its squared norm is the overlap probability.
StateVector contract_subsystem(const StateVector& state, SubsystemLabel label, const Vector2& bra);

/// Applies <bra| (a vector over two subsystems, big-endian in argument order)
/// and drops both from the layout. Not renormalized.
StateVector contract_pair(const StateVector& state, SubsystemLabel first, SubsystemLabel second, const VectorX& bra);

struct Projection {
  double probability = 0.0;
  /// P psi / |P psi|; empty when the branch is forbidden (probability < 1e-14).
  std::optional<StateVector> collapsed;
};

/// Projective measurement branch for a Hermitian idempotent on `targets`.
/// Throws std::invalid_argument if the operator is not a projector.
Projection project(const StateVector& state, const MatrixX& projector, std::span<const SubsystemLabel> targets);

struct Measurement {
  int outcome = 0;
  double probability = 0.0;
  StateVector collapsed;
};

/// Samples a measurement of `target` in the orthonormal basis {basis0, basis1}.
Measurement measure(const StateVector& state, SubsystemLabel target, const Vector2& basis0, const Vector2& basis1,
                    Rng& rng);

/// Computational-basis measurement.
Measurement measure_z(const StateVector& state, SubsystemLabel target, Rng& rng);

/// Number of Schmidt coefficients above `tol` across (partition | rest).
std::size_t schmidt_rank(const StateVector& state, std::span<const SubsystemLabel> partition, double tol = 1e-9);

/// Schmidt coefficients, descending.
std::vector<double> schmidt_coefficients(const StateVector& state, std::span<const SubsystemLabel> partition);

/// |<a|b>|^2 for states with equal layouts.
double overlap_probability(const StateVector& a, const StateVector& b);

}  // namespace nvphoton

#endif  // NVPHOTON_STATE_VECTOR_HPP
