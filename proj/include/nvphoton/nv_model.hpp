#ifndef NVPHOTON_NV_MODEL_HPP
#define NVPHOTON_NV_MODEL_HPP

#include <optional>

#include "nvphoton/rng.hpp"
#include "nvphoton/state_vector.hpp"

namespace nvphoton::nv {

// Named basis vectors in register bit convention.
//
// The electron ground states |+1>_e, |-1>_e both couple to the excited
// state A2 = |E-> |+1>_e + |E+> |-1>_e, one through sigma+ and one through
// sigma- absorption. Only the symmetric combination (bright) is driven by a
// (sigma+ + sigma-)/sqrt2 photon. A second laser on the A1 transition pumps
// the antisymmetric combination (dark) into |0>_e, which is outside the
// register and ends the run.
Vector2 bright();
Vector2 dark();
Vector2 spin_up();    // |+1>, bit 0
Vector2 spin_down();  // |-1>, bit 1
Vector2 sigma_minus();
Vector2 sigma_plus();

/// (|+1>_e |s-> + |-1>_e |s+>)/sqrt2 over (electron, photon), big-endian.
VectorX emitted_bell_pair();

/// |b>_e (x) |nuclear_init>_n, layout [Electron, Nuclear].
StateVector prepare_initial(int nuclear_init);

enum class CycleStatus { Bright, Shelved };

struct CycleResult {
  CycleStatus status = CycleStatus::Shelved;
  /// Post-filter state, present only for Bright.
  std::optional<StateVector> state;
  /// Born probability of the branch that occurred.
  double branch_probability = 0.0;
};

/// Probability that the electron is found bright.
double bright_probability(const StateVector& state);

/// Samples the A1 shelving filter: projective bright/dark measurement of the
/// electron. Dark ends the run.
CycleResult bright_dark_filter(const StateVector& state, Rng& rng);

/// The bright branch of the filter without sampling (post-selected path).
/// Throws InvariantError if the bright branch is forbidden.
CycleResult bright_branch(const StateVector& state);

/// Absorption of a (s+ + s-)/sqrt2 photon on A2 and re-emission. Requires the
/// state to factor as |b>_e (x) rest within 1e-10 (throws InvariantError
/// otherwise) and maps it to Bell(e, new photon) (x) rest. The new photon is
/// appended at the end of the layout.
StateVector absorb_emit(const StateVector& state, unsigned new_photon_index);

/// Second excitation with no nuclear gate in between: the absorption projects
/// the electron onto |b>, which releases the previous photon, then a new
/// photon is emitted entangled with the electron.
StateVector reexcite_without_cnot(const StateVector& state, unsigned new_photon_index);

}  // namespace nvphoton::nv

#endif  // NVPHOTON_NV_MODEL_HPP
