#ifndef NVPHOTON_CALIBRATION_HPP
#define NVPHOTON_CALIBRATION_HPP

#include <cstdint>
#include <map>
#include <string>

#include "nvphoton/protocol.hpp"

namespace nvphoton {

/// Photon counts a candidate sequence must reproduce exactly on both branches.
inline constexpr unsigned kCalibrationLengths[] = {2, 3, 4};
inline constexpr std::size_t kMaxPeriodicGates = 5;
inline constexpr std::size_t kMaxFirstCycleGates = 3;

struct CalibrationResult {
  GateSequence sequence;
  /// Keyed by photon count (the validation lengths).
  std::map<unsigned, BranchCorrection> corrections;
  std::uint64_t candidates_examined = 0;
};

/// Ordered exhaustive search. Periodic cycles are drawn from
/// {H_e@after, CX_en@after, CY_en@after, S_e@after, H_e@before} with length
/// 1..5 in odometer order; for each, cycle 1 first tries the periodic
/// after-emission steps, then every after-emission list of 1..3 gates over
/// {H_e, CX_en, CY_en, S_e}. Candidates without a controlled gate are
/// skipped. Returns the first sequence whose corrected ideal output matches
/// the canonical target at every calibration length. Throws InvariantError
/// with the best candidate when nothing matches.
CalibrationResult calibrate_sequence(ProtocolKind kind);

/// Frozen result of calibrate_sequence (see calibrated_sequences.hpp).
GateSequence calibrated_sequence(ProtocolKind kind);

/// C++ source for the frozen constants header.
std::string generate_constants_header(const CalibrationResult& ghz, const CalibrationResult& cluster);

}  // namespace nvphoton

#endif  // NVPHOTON_CALIBRATION_HPP
