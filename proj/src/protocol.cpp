#include "nvphoton/protocol.hpp"

#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>

#include "nvphoton/calibration.hpp"
#include "nvphoton/density_matrix.hpp"
#include "nvphoton/format.hpp"
#include "nvphoton/nv_model.hpp"
#include "nvphoton/targets.hpp"

namespace nvphoton {

namespace {

constexpr double kContractionTol = 1e-10;
constexpr double kCorrectionTol = 1e-9;
constexpr std::uint64_t kMaxAttempts = 100'000'000;

void check_photon_count(unsigned m) {
  if (m < kMinPhotons || m > kMaxPhotons) {
    throw std::invalid_argument("photon count " + std::to_string(m) + " outside [1, 12]");
  }
}

void apply_step(StateVector& state, const GateStep& step, const noise::NoiseModel& noise, bool noisy_gates, Rng& rng) {
  const MatrixX u = noisy_gates ? noise::noisy_gate(step.gate, noise, rng) : gates::ideal(step.gate);
  if (is_two_qubit(step.gate)) {
    apply_gate_inplace(state, Matrix4(u), SubsystemLabel::electron(), SubsystemLabel::nuclear());
  } else {
    apply_gate_inplace(state, Matrix2(u), SubsystemLabel::electron());
  }
}

void apply_steps(StateVector& state, const std::vector<GateStep>& steps, Placement placement,
                 const noise::NoiseModel& noise, bool noisy_gates, Rng& rng) {
  for (const GateStep& step : steps) {
    if (step.placement == placement) {
      apply_step(state, step, noise, noisy_gates, rng);
    }
  }
}

struct Finalized {
  int branch = 0;
  std::optional<StateVector> photons;
};

// Nuclear Z measurement (sampled or forced) followed by removal of the nucleus.
Finalized measure_nucleus(const StateVector& joint, const ChainControl& control, Rng& rng) {
  const SubsystemLabel n = SubsystemLabel::nuclear();
  const Vector2 basis[2] = {nv::spin_up(), nv::spin_down()};
  Finalized out;
  if (control.forced_branch) {
    out.branch = *control.forced_branch;
    if (out.branch != 0 && out.branch != 1) {
      throw std::invalid_argument("forced nuclear branch must be 0 or 1");
    }
    StateVector photons = contract_subsystem(joint, n, basis[out.branch]);
    const double p = photons.norm() * photons.norm();
    if (p < kForbiddenBranch) {
      return out;
    }
    photons.normalize();
    out.photons = std::move(photons);
    return out;
  }
  Measurement meas = measure_z(joint, n, rng);
  out.branch = meas.outcome;
  StateVector photons = contract_subsystem(meas.collapsed, n, basis[out.branch]);
  photons.normalize();
  out.photons = std::move(photons);
  return out;
}

}  // namespace

std::string to_string(ProtocolKind kind) { return kind == ProtocolKind::Ghz ? "ghz" : "cluster"; }

std::optional<ProtocolKind> parse_protocol_kind(std::string_view text) {
  if (text == "ghz") {
    return ProtocolKind::Ghz;
  }
  if (text == "cluster") {
    return ProtocolKind::Cluster;
  }
  return std::nullopt;
}

std::string describe(const GateSequence& sequence) {
  const auto join = [](const std::vector<GateStep>& steps) {
    std::string s = "[";
    for (std::size_t i = 0; i < steps.size(); ++i) {
      s += (i ? ", " : "") + to_string(steps[i]);
    }
    return s + "]";
  };
  return "first=" + join(sequence.first_cycle) + " periodic=" + join(sequence.periodic);
}

void validate_sequence(const GateSequence& sequence) {
  for (const GateStep& step : sequence.first_cycle) {
    if (step.placement != Placement::AfterEmission) {
      throw std::invalid_argument("first-cycle gates must act after emission");
    }
  }
}

ChainState run_chain(const GateSequence& sequence, unsigned m, const noise::NoiseModel& noise, Rng& rng,
                     const ChainControl& control) {
  check_photon_count(m);
  validate_sequence(sequence);
  const bool quiet = noise.is_ideal();
  const bool noisy_gates = noise.gate_angle_max > 0.0;
  const noise::RunDisorder disorder = quiet ? noise::RunDisorder{} : noise::sample_run_disorder(noise, rng);
  const SubsystemLabel e = SubsystemLabel::electron();

  ChainState out;
  StateVector state = nv::prepare_initial(0);
  for (unsigned k = 1; k <= m + 1; ++k) {
    if (k >= 2) {
      apply_steps(state, sequence.periodic, Placement::BeforeExcitation, noise, noisy_gates, rng);
    }
    nv::CycleResult filtered = control.deterministic_bright ? nv::bright_branch(state) : nv::bright_dark_filter(state, rng);
    if (filtered.status == nv::CycleStatus::Shelved) {
      out.achieved_m = std::min(k - 1, m);
      return out;
    }
    state = nv::absorb_emit(*filtered.state, k);
    out.excitations_passed = k;
    if (k == m + 1) {
      break;
    }
    apply_steps(state, k == 1 ? sequence.first_cycle : sequence.periodic, Placement::AfterEmission, noise,
                noisy_gates, rng);
    if (!quiet) {
      noise::dephase_interval_inplace(state, disorder, noise);
    }
    if (control.kick_interval && *control.kick_interval == k) {
      apply_gate_inplace(state, gates::rz(2.0 * control.kick_angle), SubsystemLabel::nuclear());
    }
  }

  StateVector joint = contract_pair(state, e, SubsystemLabel::photon(m + 1), nv::emitted_bell_pair());
  if (std::abs(joint.norm() - 1.0) > kContractionTol) {
    throw InvariantError("last photon did not carry the electron away (norm " + format_real(joint.norm()) + ")");
  }
  out.achieved_m = m;
  out.completed = true;
  out.joint = std::move(joint);
  return out;
}

StateVector canonical_target(ProtocolKind kind, unsigned m) {
  check_photon_count(m);
  if (m == 1) {
    return single_photon_plus();
  }
  return kind == ProtocolKind::Ghz ? ideal_ghz(m) : ideal_cluster(m, 1);
}

std::vector<PauliString> canonical_generators(ProtocolKind kind, unsigned m) {
  check_photon_count(m);
  return kind == ProtocolKind::Ghz || m == 1 ? ghz_generators(m) : cluster_generators(m);
}

PauliString destabilizer(ProtocolKind kind, unsigned m, std::size_t index) {
  check_photon_count(m);
  if (index >= m) {
    throw std::out_of_range("generator index out of range");
  }
  PauliString d = PauliString::identity(m);
  if (kind == ProtocolKind::Cluster || index == 0) {
    d.set(index, 'Z');
    return d;
  }
  // Z_a Z_{a+1} (index a) is flipped by X_{a+1} ... X_m.
  for (std::size_t j = index; j < m; ++j) {
    d.set(j, 'X');
  }
  return d;
}

Protocol::Protocol(ProtocolKind kind, unsigned m) : Protocol(kind, m, calibrated_sequence(kind)) {}

CorrectionFit fit_correction(ProtocolKind kind, unsigned m, const GateSequence& sequence) {
  const StateVector target = canonical_target(kind, m);
  const std::vector<PauliString> generators = canonical_generators(kind, m);
  const noise::NoiseModel ideal = noise::NoiseModel::ideal();
  Rng unused(0);
  CorrectionFit fit;
  fit.worst_fidelity = 1.0;
  for (int branch = 0; branch < 2; ++branch) {
    PauliString fix = PauliString::identity(m);
    ChainControl control;
    control.deterministic_bright = true;
    control.forced_branch = branch;
    const ChainState chain = run_chain(sequence, m, ideal, unused, control);
    const Finalized fin = measure_nucleus(*chain.joint, control, unused);
    double f = 0.0;
    if (fin.photons) {
      const std::vector<double> signs = stabilizer_expectations(*fin.photons, generators);
      for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] < 0.0) {
          fix = fix * destabilizer(kind, m, i);
        }
      }
      f = overlap_probability(target, apply_pauli_string(*fin.photons, fix));
    }
    fit.correction.per_branch[static_cast<std::size_t>(branch)] = fix;
    fit.worst_fidelity = std::min(fit.worst_fidelity, f);
  }
  return fit;
}

Protocol::Protocol(ProtocolKind kind, unsigned m, GateSequence sequence)
    : kind_(kind),
      m_(m),
      sequence_(std::move(sequence)),
      target_(canonical_target(kind, m)),
      generators_(canonical_generators(kind, m)) {
  const CorrectionFit fit = fit_correction(kind, m, sequence_);
  if (fit.worst_fidelity < 1.0 - kCorrectionTol) {
    throw InvariantError(describe(sequence_) + " does not reach the " + to_string(kind) + " target at m = " +
                         std::to_string(m) + " (worst corrected F = " + format_real(fit.worst_fidelity) + ")");
  }
  correction_ = fit.correction;
}

ProtocolOutcome Protocol::run(const noise::NoiseModel& noise, Rng& rng, bool post_select_bright,
                              const ChainControl& control) const {
  ProtocolOutcome out;
  out.requested_m = m_;
  ChainState chain;
  do {
    if (out.attempts == kMaxAttempts) {
      throw InvariantError("post-selection did not complete within the attempt limit");
    }
    ++out.attempts;
    chain = run_chain(sequence_, m_, noise, rng, control);
  } while (!chain.completed && post_select_bright);

  out.achieved_m = chain.achieved_m;
  out.excitations_passed = chain.excitations_passed;
  if (!chain.completed) {
    return out;
  }
  Finalized fin = measure_nucleus(*chain.joint, control, rng);
  out.nuclear_branch = fin.branch;
  if (!fin.photons) {
    return out;
  }
  out.shelved_early = false;
  StateVector corrected = apply_pauli_string(*fin.photons, correction_.per_branch[static_cast<std::size_t>(fin.branch)]);
  out.fidelity_vs_ideal = overlap_probability(target_, corrected);
  out.photon_state = std::move(corrected);
  return out;
}

const Protocol& protocol_for(ProtocolKind kind, unsigned m) {
  check_photon_count(m);
  static std::mutex mu;
  static std::array<std::array<std::unique_ptr<Protocol>, kMaxPhotons + 1>, 2> cache;
  const std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[kind == ProtocolKind::Ghz ? 0 : 1][m];
  if (!slot) {
    slot = std::make_unique<Protocol>(kind, m);
  }
  return *slot;
}

ProtocolOutcome run_protocol(ProtocolKind kind, unsigned m, const noise::NoiseModel& noise, Rng& rng,
                             bool post_select_bright) {
  return protocol_for(kind, m).run(noise, rng, post_select_bright);
}

namespace {

double fidelity_at(const Protocol& protocol, const noise::NoiseModel& noise, std::uint64_t trials, std::uint64_t seed,
                   bool parallel) {
  std::vector<std::optional<StateVector>> states(trials);
  std::exception_ptr failure;
  const auto body = [&](std::int64_t t) {
    try {
      Rng rng = derive_stream(seed, {protocol.photons(), static_cast<std::uint64_t>(t)});
      states[static_cast<std::size_t>(t)] = protocol.run(noise, rng, true).photon_state;
    } catch (...) {
#pragma omp critical(nvphoton_curve_failure)
      if (!failure) {
        failure = std::current_exception();
      }
    }
  };
  const auto n = static_cast<std::int64_t>(trials);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t t = 0; t < n; ++t) {
      body(t);
    }
  } else {
    for (std::int64_t t = 0; t < n; ++t) {
      body(t);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  std::vector<StateVector> ensemble;
  ensemble.reserve(trials);
  for (auto& s : states) {
    if (!s) {
      throw InvariantError("post-selected trial returned no photon state");
    }
    ensemble.push_back(std::move(*s));
  }
  return fidelity_pure_mixed(protocol.target(), density_from_ensemble(std::span<const StateVector>(ensemble)));
}

FidelityCurve curve_impl(ProtocolKind kind, unsigned m_max, const noise::NoiseModel& noise, std::uint64_t trials,
                         std::uint64_t seed, bool parallel) {
  if (trials < 1) {
    throw std::invalid_argument("fidelity_curve needs at least one trial");
  }
  if (m_max < 2 || m_max > kMaxPhotons) {
    throw std::invalid_argument("m_max must lie in [2, 12]");
  }
  noise.validate();
  FidelityCurve curve;
  curve.kind = kind;
  curve.seed = seed;
  for (unsigned m = 2; m <= m_max; ++m) {
    curve.points.push_back({m, fidelity_at(protocol_for(kind, m), noise, trials, seed, parallel), trials});
  }
  return curve;
}

}  // namespace

FidelityCurve fidelity_curve(ProtocolKind kind, unsigned m_max, const noise::NoiseModel& noise, std::uint64_t trials,
                             std::uint64_t seed) {
  return curve_impl(kind, m_max, noise, trials, seed, true);
}

namespace reference {
FidelityCurve fidelity_curve_serial(ProtocolKind kind, unsigned m_max, const noise::NoiseModel& noise,
                                    std::uint64_t trials, std::uint64_t seed) {
  return curve_impl(kind, m_max, noise, trials, seed, false);
}
}  // namespace reference

void write_curve_csv(std::ostream& out, const FidelityCurve& curve) {
  out << "m,F,trials,seed\n";
  for (const FidelityPoint& p : curve.points) {
    out << p.m << ',' << format_real(p.fidelity) << ',' << p.trials << ',' << curve.seed << '\n';
  }
}

}  // namespace nvphoton
