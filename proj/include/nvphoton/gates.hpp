#ifndef NVPHOTON_GATES_HPP
#define NVPHOTON_GATES_HPP

#include <string>

#include "nvphoton/types.hpp"

namespace nvphoton {

/// Spin operations available inside one protocol cycle. Two-qubit gates act
/// on (electron, nuclear) with the electron as control.
enum class GateKind {
  HadamardE,      // Hadamard on the electron in the {|+1>, |-1>} qubit
  ControlledXEN,  // X on the nucleus conditioned on |-1>_e
  ControlledYEN,  // Y on the nucleus conditioned on |-1>_e
  PhaseE,         // diag(1, i) on the electron
};

/// Where a gate sits relative to the absorption/emission event of its cycle.
/// BeforeExcitation gates run ahead of the shelving filter of cycles 2..m+1;
/// AfterEmission gates run right after the photon is emitted.
enum class Placement { BeforeExcitation, AfterEmission };

struct GateStep {
  GateKind gate = GateKind::HadamardE;
  Placement placement = Placement::AfterEmission;
  friend bool operator==(const GateStep&, const GateStep&) = default;
};

std::string to_string(GateKind gate);
std::string to_string(const GateStep& step);

constexpr bool is_two_qubit(GateKind g) { return g == GateKind::ControlledXEN || g == GateKind::ControlledYEN; }

namespace gates {

Matrix2 identity();
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
Matrix2 hadamard();
Matrix2 phase_s();

/// exp(-i angle/2 P) for a Pauli P.
Matrix2 pauli_rotation(const Matrix2& pauli, double angle);
/// diag(exp(-i angle/2), exp(i angle/2)).
Matrix2 rz(double angle);
/// exp(-i angle/2 Z (x) Z).
Matrix4 zz_rotation(double angle);
/// |0><0| (x) I + |1><1| (x) u, control first.
Matrix4 controlled(const Matrix2& u);

/// Exact gate matrix (2x2 or 4x4).
MatrixX ideal(GateKind gate);

}  // namespace gates

}  // namespace nvphoton

#endif  // NVPHOTON_GATES_HPP
