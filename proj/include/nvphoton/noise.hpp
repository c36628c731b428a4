#ifndef NVPHOTON_NOISE_HPP
#define NVPHOTON_NOISE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nvphoton/gates.hpp"
#include "nvphoton/rng.hpp"
#include "nvphoton/state_vector.hpp"

namespace nvphoton::noise {

/// SI constants entering the electron/13C dipolar tensor. Gyromagnetic ratios
/// are magnitudes in rad s^-1 T^-1.
struct PhysicalConstants {
  double mu0_over_4pi = 1e-7;
  double hbar = 1.054571817e-34;
  double gamma_e = 1.76085963023e11;
  double gamma_c = 6.728284e7;
  double gamma_n = 1.9337792e7;  // 14N
};

/// Explicit 13C bath: spin positions relative to the electron, in meters.
struct BathConfig {
  std::vector<Eigen::Vector3d> positions;
  PhysicalConstants constants;
};

/// Dipolar hyperfine tensor of one bath spin, rad/s:
///   (mu0/4pi) hbar gamma_e gamma_c / r^3 (1 - 3 r r^T / r^2).
/// Throws std::invalid_argument for a spin at the origin.
Eigen::Matrix3d dipolar_tensor(const Eigen::Vector3d& position, const PhysicalConstants& c);

/// Secular (zz) element of the dipolar tensor, rad/s.
double secular_coupling(const Eigen::Vector3d& position, const PhysicalConstants& c);

/// Plain-text table, one spin per line "x y z" in nanometers; '#' starts a
/// comment. Throws std::runtime_error with the line number on bad input.
BathConfig parse_bath_table(std::istream& in);
BathConfig load_bath_file(const std::string& path);

/// `count` spins placed uniformly in the shell r_min <= r <= r_max (meters).
BathConfig random_shell_bath(std::size_t count, double r_min, double r_max, Rng& rng);

enum class BathMode { UniformBounded, Gaussian, Explicit };

struct NoiseModel {
  /// Bound on the rotation-angle error of H_e, CX_en, CY_en (radians).
  double gate_angle_max = 0.0;
  /// UniformBounded: per-interval nuclear Z-rotation angle drawn in [-max, max].
  double bath_phase_max = 0.0;
  /// UniformBounded: per-interval electron Z-rotation bound.
  double electron_phase_max = 0.0;
  BathMode bath_mode = BathMode::UniformBounded;
  /// Gaussian: standard deviations of the per-interval rotation angles.
  double bath_sigma = 0.0;
  double electron_sigma = 0.0;
  std::optional<BathConfig> bath;
  /// Electron-14N hyperfine A (rad/s). Placeholder default; only acts
  /// without echo.
  double hyperfine_coupling = 0.0;
  bool hahn_echo = false;
  /// Inter-photon interval (s).
  double tau = 1e-6;
  std::uint64_t seed = 0;

  static NoiseModel ideal() { return {}; }
  bool is_ideal() const;
  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Quasi-static detunings for one run (rad/s).
struct RunDisorder {
  double nuclear_detuning = 0.0;
  double electron_detuning = 0.0;
};

RunDisorder sample_run_disorder(const NoiseModel& model, Rng& rng);

/// Free evolution over one interval tau under the pure-dephasing Hamiltonian.
/// Nuclear Z-rotation by delta_n tau always; without echo also the electron
/// Z-rotation by delta_e tau and the ZZ rotation by A tau.
void dephase_interval_inplace(StateVector& state, const RunDisorder& disorder, const NoiseModel& model);
StateVector dephase_interval(const StateVector& state, const RunDisorder& disorder, const NoiseModel& model);

/// Gate with its generating rotation angle offset by `angle_error`:
///   H_e   -> Ry(pi/2 + eps) Z        (equals H at eps = 0)
///   CP_en -> controlled(i exp(-i (pi + eps)/2 P))  (equals CP at eps = 0)
/// PhaseE is a frame update and is returned exact.
MatrixX gate_with_angle_error(GateKind gate, double angle_error);

/// Ideal gate perturbed by eps ~ U[-gate_angle_max, gate_angle_max], drawn
/// fresh per call.
MatrixX noisy_gate(GateKind gate, const NoiseModel& model, Rng& rng);

}  // namespace nvphoton::noise

#endif  // NVPHOTON_NOISE_HPP
