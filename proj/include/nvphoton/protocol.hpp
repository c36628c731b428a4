#ifndef NVPHOTON_PROTOCOL_HPP
#define NVPHOTON_PROTOCOL_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nvphoton/gates.hpp"
#include "nvphoton/noise.hpp"
#include "nvphoton/rng.hpp"
#include "nvphoton/stabilizer.hpp"
#include "nvphoton/state_vector.hpp"

namespace nvphoton {

enum class ProtocolKind { Ghz, Cluster };

std::string to_string(ProtocolKind kind);
/// Accepts "ghz" / "cluster" (case-sensitive).
std::optional<ProtocolKind> parse_protocol_kind(std::string_view text);

inline constexpr unsigned kMinPhotons = 1;
inline constexpr unsigned kMaxPhotons = 12;

/// Electron/nuclear gates applied each cycle. Cycle 1 runs `first_cycle`
/// (after-emission steps only); cycles k >= 2 all run `periodic`, whose
/// before-excitation steps act ahead of the k-th filter.
struct GateSequence {
  std::vector<GateStep> first_cycle;
  std::vector<GateStep> periodic;

  friend bool operator==(const GateSequence&, const GateSequence&) = default;
};

std::string describe(const GateSequence& sequence);
/// Throws std::invalid_argument if `first_cycle` holds a before-excitation step.
void validate_sequence(const GateSequence& sequence);

/// Pauli fix-up per nuclear outcome; index = branch.
struct BranchCorrection {
  std::array<PauliString, 2> per_branch;

  friend bool operator==(const BranchCorrection&, const BranchCorrection&) = default;
};

/// Corrections derived from noiseless runs on both branches. Each branch's
/// fix-up is the product of destabilizers of generators measuring -1;
/// `worst_fidelity` is the lower of the two corrected overlaps with the
/// canonical target (0 for a forbidden branch).
struct CorrectionFit {
  BranchCorrection correction;
  double worst_fidelity = 0.0;
};

/// Test hooks for the pipeline.
struct ChainControl {
  /// Take the bright branch of every filter without sampling.
  bool deterministic_bright = false;
  /// Project the nucleus onto this outcome instead of sampling it.
  std::optional<int> forced_branch;
  /// Nuclear Rz(2 * kick_angle) after the gates of cycle `kick_interval`.
  std::optional<unsigned> kick_interval;
  double kick_angle = 0.0;
};

/// State of one run just before the nuclear measurement.
struct ChainState {
  unsigned achieved_m = 0;
  /// Excitations that passed the bright filter (up to m + 1).
  unsigned excitations_passed = 0;
  bool completed = false;
  /// Layout [n, p1..pm]; present iff completed.
  std::optional<StateVector> joint;
};

/// Prepares, runs m cycles plus the disentangling (m+1)-th excitation, and
/// contracts the electron with the last photon. Disorder is sampled once per
/// call. Throws std::invalid_argument for m outside [1, 12].
ChainState run_chain(const GateSequence& sequence, unsigned m, const noise::NoiseModel& noise, Rng& rng,
                     const ChainControl& control = {});

struct ProtocolOutcome {
  unsigned requested_m = 0;
  unsigned achieved_m = 0;
  std::optional<int> nuclear_branch;
  std::optional<StateVector> photon_state;
  double fidelity_vs_ideal = 0.0;
  bool shelved_early = true;
  /// Runs started, including shelved retries under post-selection.
  std::uint64_t attempts = 0;
  /// Filter passes of the returned (last) attempt.
  unsigned excitations_passed = 0;
};

/// One protocol instance for (kind, m): sequence, canonical target, generators
/// and per-branch corrections derived from noiseless runs at construction.
class Protocol {
 public:
  /// Uses the frozen calibrated sequence for `kind`.
  Protocol(ProtocolKind kind, unsigned m);
  Protocol(ProtocolKind kind, unsigned m, GateSequence sequence);

  ProtocolKind kind() const { return kind_; }
  unsigned photons() const { return m_; }
  const GateSequence& sequence() const { return sequence_; }
  const StateVector& target() const { return target_; }
  const std::vector<PauliString>& generators() const { return generators_; }
  const BranchCorrection& correction() const { return correction_; }

  /// With `post_select_bright`, shelved attempts are rerun with fresh disorder
  /// until one completes.
  ProtocolOutcome run(const noise::NoiseModel& noise, Rng& rng, bool post_select_bright,
                      const ChainControl& control = {}) const;

 private:
  ProtocolKind kind_;
  unsigned m_;
  GateSequence sequence_;
  StateVector target_;
  std::vector<PauliString> generators_;
  BranchCorrection correction_;
};

CorrectionFit fit_correction(ProtocolKind kind, unsigned m, const GateSequence& sequence);

/// Shared, lazily built Protocol for the calibrated sequence.
const Protocol& protocol_for(ProtocolKind kind, unsigned m);

ProtocolOutcome run_protocol(ProtocolKind kind, unsigned m, const noise::NoiseModel& noise, Rng& rng,
                             bool post_select_bright = true);

/// Target the corrected output is compared with: GHZ for m >= 2, the standard
/// linear cluster (ideal_cluster(m, 1)) for m >= 2, |+> for m = 1.
StateVector canonical_target(ProtocolKind kind, unsigned m);
std::vector<PauliString> canonical_generators(ProtocolKind kind, unsigned m);

/// Pauli that flips exactly generator `index` of canonical_generators(kind, m).
PauliString destabilizer(ProtocolKind kind, unsigned m, std::size_t index);

struct FidelityPoint {
  unsigned m = 0;
  double fidelity = 0.0;
  std::uint64_t trials = 0;
};

struct FidelityCurve {
  ProtocolKind kind = ProtocolKind::Ghz;
  std::uint64_t seed = 0;
  std::vector<FidelityPoint> points;
};

/// F_m for m = 2..m_max from `trials` post-selected runs each. Trial t at
/// length m draws from derive_stream(seed, {m, t}), so the result does not
/// depend on thread count or schedule.
FidelityCurve fidelity_curve(ProtocolKind kind, unsigned m_max, const noise::NoiseModel& noise, std::uint64_t trials,
                             std::uint64_t seed);

namespace reference {
FidelityCurve fidelity_curve_serial(ProtocolKind kind, unsigned m_max, const noise::NoiseModel& noise,
                                    std::uint64_t trials, std::uint64_t seed);
}  // namespace reference

/// Header `m,F,trials,seed`.
void write_curve_csv(std::ostream& out, const FidelityCurve& curve);

}  // namespace nvphoton

#endif  // NVPHOTON_PROTOCOL_HPP
