#ifndef NVPHOTON_CLI_HPP
#define NVPHOTON_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "nvphoton/noise.hpp"

namespace nvphoton::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the directory for outputs when --out is absent.
inline constexpr const char* kOutDirEnv = "NVPHOTON_OUT_DIR";

/// Noise model plus the bath table path it was loaded from, if any.
struct NoiseSpec {
  noise::NoiseModel model;
  std::string bath_file;
};

/// key=value lines, '#' comments. Keys: gate_angle_max_deg, bath_phase_max_deg,
/// electron_phase_max_deg, bath_mode (uniform|gaussian|explicit),
/// bath_sigma_deg, electron_sigma_deg, hahn_echo (true|false), tau_us,
/// hyperfine_rad_per_s, bath_file. Throws std::invalid_argument naming the
/// offending line.
NoiseSpec parse_noise_config(std::istream& in);
NoiseSpec load_noise_file(const std::string& path);

/// Inverse of parse_noise_config (canonical key order).
std::string serialize_noise(const NoiseSpec& spec);

/// `out` when given, else $NVPHOTON_OUT_DIR/<fallback_name> (or ./<fallback_name>).
std::string resolve_output_path(const std::string& out, const std::string& fallback_name);

/// Entry point for `nvphoton <run|fidelity-sweep|rates> ...`.
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nvphoton::cli

#endif  // NVPHOTON_CLI_HPP
