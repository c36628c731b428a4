#include "nvphoton/noise.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nvphoton::noise {

using namespace std::complex_literals;

Eigen::Matrix3d dipolar_tensor(const Eigen::Vector3d& position, const PhysicalConstants& c) {
  const double r = position.norm();
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("bath spin position must be nonzero and finite");
  }
  const Eigen::Vector3d u = position / r;
  const double scale = c.mu0_over_4pi * c.hbar * c.gamma_e * c.gamma_c / (r * r * r);
  return scale * (Eigen::Matrix3d::Identity() - 3.0 * u * u.transpose());
}

double secular_coupling(const Eigen::Vector3d& position, const PhysicalConstants& c) {
  return dipolar_tensor(position, c)(2, 2);
}

BathConfig parse_bath_table(std::istream& in) {
  BathConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    double x = 0;
    double y = 0;
    double z = 0;
    if (!(fields >> x)) {
      continue;  // blank or comment-only
    }
    std::string extra;
    if (!(fields >> y >> z) || (fields >> extra)) {
      throw std::runtime_error("bath table line " + std::to_string(line_no) + ": expected 'x y z' in nm");
    }
    Eigen::Vector3d p(x, y, z);
    p *= 1e-9;
    if (p.norm() == 0.0) {
      throw std::runtime_error("bath table line " + std::to_string(line_no) + ": spin at the origin");
    }
    cfg.positions.push_back(p);
  }
  return cfg;
}

BathConfig load_bath_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open bath file " + path);
  }
  return parse_bath_table(f);
}

BathConfig random_shell_bath(std::size_t count, double r_min, double r_max, Rng& rng) {
  if (!(r_min > 0.0) || !(r_max >= r_min)) {
    throw std::invalid_argument("shell radii must satisfy 0 < r_min <= r_max");
  }
  BathConfig cfg;
  const double a = r_min * r_min * r_min;
  const double b = r_max * r_max * r_max;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = std::cbrt(rng.uniform(a, b));
    const double cos_t = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double sin_t = std::sqrt(1.0 - cos_t * cos_t);
    cfg.positions.emplace_back(r * sin_t * std::cos(phi), r * sin_t * std::sin(phi), r * cos_t);
  }
  return cfg;
}

bool NoiseModel::is_ideal() const {
  const bool bath_quiet = bath_mode == BathMode::UniformBounded   ? bath_phase_max == 0.0 && electron_phase_max == 0.0
                          : bath_mode == BathMode::Gaussian       ? bath_sigma == 0.0 && electron_sigma == 0.0
                                                                  : (!bath || bath->positions.empty());
  return gate_angle_max == 0.0 && bath_quiet && (hahn_echo || hyperfine_coupling == 0.0);
}

void NoiseModel::validate() const {
  const auto in_range = [](double v) { return v >= 0.0 && v <= std::numbers::pi; };
  if (!in_range(gate_angle_max) || !in_range(bath_phase_max) || !in_range(electron_phase_max)) {
    throw std::invalid_argument("angle bounds must lie in [0, pi]");
  }
  if (!(bath_sigma >= 0.0) || !(electron_sigma >= 0.0)) {
    throw std::invalid_argument("gaussian widths must be non-negative");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("tau must be positive");
  }
  if (!std::isfinite(hyperfine_coupling)) {
    throw std::invalid_argument("hyperfine coupling must be finite");
  }
  if (bath_mode == BathMode::Explicit) {
    if (!bath) {
      throw std::invalid_argument("explicit bath mode needs a bath configuration");
    }
    for (const auto& p : bath->positions) {
      if (!std::isfinite(secular_coupling(p, bath->constants))) {
        throw std::invalid_argument("bath coupling is not finite");
      }
    }
  }
}

RunDisorder sample_run_disorder(const NoiseModel& model, Rng& rng) {
  RunDisorder d;
  switch (model.bath_mode) {
    case BathMode::UniformBounded:
      d.nuclear_detuning = rng.uniform(-model.bath_phase_max, model.bath_phase_max) / model.tau;
      d.electron_detuning = rng.uniform(-model.electron_phase_max, model.electron_phase_max) / model.tau;
      break;
    case BathMode::Gaussian:
      d.nuclear_detuning = rng.normal(0.0, model.bath_sigma) / model.tau;
      d.electron_detuning = rng.normal(0.0, model.electron_sigma) / model.tau;
      break;
    case BathMode::Explicit: {
      if (!model.bath) {
        throw std::invalid_argument("explicit bath mode needs a bath configuration");
      }
      const BathConfig& bath = *model.bath;
      double overhauser = 0.0;
      for (const auto& p : bath.positions) {
        const double m = rng.bernoulli(0.5) ? 0.5 : -0.5;
        overhauser += secular_coupling(p, bath.constants) * m;
      }
      d.electron_detuning = overhauser;
      // The nucleus sees the same bath field scaled by its gyromagnetic ratio.
      d.nuclear_detuning = bath.constants.gamma_n / bath.constants.gamma_e * overhauser;
      break;
    }
  }
  return d;
}

void dephase_interval_inplace(StateVector& state, const RunDisorder& disorder, const NoiseModel& model) {
  const SubsystemLabel n = SubsystemLabel::nuclear();
  const SubsystemLabel e = SubsystemLabel::electron();
  const double nuclear_angle = disorder.nuclear_detuning * model.tau;
  if (nuclear_angle != 0.0) {
    apply_gate_inplace(state, gates::rz(nuclear_angle), n);
  } else {
    (void)state.position(n);
  }
  if (model.hahn_echo || !state.contains(e)) {
    return;
  }
  const double electron_angle = disorder.electron_detuning * model.tau;
  if (electron_angle != 0.0) {
    apply_gate_inplace(state, gates::rz(electron_angle), e);
  }
  const double cross = model.hyperfine_coupling * model.tau;
  if (cross != 0.0) {
    apply_gate_inplace(state, gates::zz_rotation(cross), e, n);
  }
}

StateVector dephase_interval(const StateVector& state, const RunDisorder& disorder, const NoiseModel& model) {
  StateVector out = state;
  dephase_interval_inplace(out, disorder, model);
  return out;
}

MatrixX gate_with_angle_error(GateKind gate, double angle_error) {
  switch (gate) {
    case GateKind::HadamardE:
      return gates::pauli_rotation(gates::pauli_y(), std::numbers::pi / 2 + angle_error) * gates::pauli_z();
    case GateKind::ControlledXEN:
      return gates::controlled(1i * gates::pauli_rotation(gates::pauli_x(), std::numbers::pi + angle_error));
    case GateKind::ControlledYEN:
      return gates::controlled(1i * gates::pauli_rotation(gates::pauli_y(), std::numbers::pi + angle_error));
    case GateKind::PhaseE:
      return gates::phase_s();
  }
  return gates::ideal(gate);
}

MatrixX noisy_gate(GateKind gate, const NoiseModel& model, Rng& rng) {
  if (gate == GateKind::PhaseE) {
    return gates::phase_s();
  }
  const double eps = rng.uniform(-model.gate_angle_max, model.gate_angle_max);
  return gate_with_angle_error(gate, eps);
}

}  // namespace nvphoton::noise
