#include "nvphoton/gates.hpp"

#include <cmath>
#include <numbers>

namespace nvphoton {

std::string to_string(GateKind gate) {
  switch (gate) {
    case GateKind::HadamardE:
      return "H_e";
    case GateKind::ControlledXEN:
      return "CX_en";
    case GateKind::ControlledYEN:
      return "CY_en";
    case GateKind::PhaseE:
      return "S_e";
  }
  return "?";
}

std::string to_string(const GateStep& step) {
  return to_string(step.gate) + (step.placement == Placement::BeforeExcitation ? "@before" : "@after");
}

namespace gates {

using namespace std::complex_literals;

Matrix2 identity() { return Matrix2::Identity(); }

Matrix2 pauli_x() { return Matrix2{{0.0, 1.0}, {1.0, 0.0}}; }

Matrix2 pauli_y() { return Matrix2{{0.0, -1i}, {1i, 0.0}}; }

Matrix2 pauli_z() { return Matrix2{{1.0, 0.0}, {0.0, -1.0}}; }

Matrix2 hadamard() {
  constexpr double r = 1.0 / std::numbers::sqrt2;
  return Matrix2{{r, r}, {r, -r}};
}

Matrix2 phase_s() { return Matrix2{{1.0, 0.0}, {0.0, 1i}}; }

Matrix2 pauli_rotation(const Matrix2& pauli, double angle) {
  return std::cos(angle / 2) * identity() - 1i * std::sin(angle / 2) * pauli;
}

Matrix2 rz(double angle) {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = std::exp(-0.5i * angle);
  m(1, 1) = std::exp(0.5i * angle);
  return m;
}

Matrix4 zz_rotation(double angle) {
  Matrix4 m = Matrix4::Zero();
  const Complex same = std::exp(-0.5i * angle);
  const Complex diff = std::exp(0.5i * angle);
  m(0, 0) = same;
  m(1, 1) = diff;
  m(2, 2) = diff;
  m(3, 3) = same;
  return m;
}

Matrix4 controlled(const Matrix2& u) {
  Matrix4 m = Matrix4::Identity();
  m.block<2, 2>(2, 2) = u;
  return m;
}

MatrixX ideal(GateKind gate) {
  switch (gate) {
    case GateKind::HadamardE:
      return hadamard();
    case GateKind::ControlledXEN:
      return controlled(pauli_x());
    case GateKind::ControlledYEN:
      return controlled(pauli_y());
    case GateKind::PhaseE:
      return phase_s();
  }
  return identity();
}

}  // namespace gates

}  // namespace nvphoton
