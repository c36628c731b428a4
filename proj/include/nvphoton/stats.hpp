#ifndef NVPHOTON_STATS_HPP
#define NVPHOTON_STATS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>

namespace nvphoton::stats {

/// Probability that a window reaches chain length >= m: 2^(1-m).
/// Throws std::invalid_argument for m < 1.
double p_chain(unsigned m);

/// C(N, n) 2^-N. Throws std::invalid_argument unless 0 <= n <= N.
double absorption_count_exact(unsigned N, unsigned n);

/// Gaussian form 2/sqrt(pi N) exp(-2 (N - n)^2 / N), evaluated as written
/// (peaks at n = N). Throws std::invalid_argument for N < 1.
double absorption_count_gaussian(unsigned N, double n);

/// de Moivre-Laplace approximation of the binomial:
/// sqrt(2 / (pi N)) exp(-2 (n - N/2)^2 / N).
double absorption_count_gaussian_centered(unsigned N, double n);

struct RateConfig {
  double tau = 1e-6;
  double cycle_time = 100e-6;
  std::uint64_t repetitions = 1000;
  double zpl_fraction = 1.0;
  double collection_eff = 1.0;
  double detector_eff = 1.0;
  /// Count the disentangling (m+1)-th photon in the efficiency exponent.
  bool count_disentangling_photon = false;
  /// Success probability of each electron Hadamard (leakage through |0>_e);
  /// multiplies every cycle after the first.
  double hadamard_success = 1.0;

  /// round(cycle_time / tau).
  unsigned slots() const;
  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct ChainHistogram {
  std::map<unsigned, std::uint64_t> counts;
  std::uint64_t repetitions = 0;

  std::uint64_t count_at_least(unsigned length) const;
};

/// One chain per repetition: length 1 always, each further slot extends the
/// chain with probability hadamard_success / 2, at most slots() long.
/// Repetition r draws from derive_stream(seed, {r}).
ChainHistogram simulate_sessions(const RateConfig& config, std::uint64_t seed);

namespace reference {
ChainHistogram simulate_sessions_serial(const RateConfig& config, std::uint64_t seed);
}  // namespace reference

/// Windows per second producing an m-chain with every counted photon
/// collected: p_chain(m) (zpl col det)^k / cycle_time, k = m (+1 with
/// count_disentangling_photon).
double detected_event_rate(const RateConfig& config, unsigned m);

/// `length,count` for lengths 1..slots().
void write_histogram_csv(std::ostream& out, const ChainHistogram& histogram, const RateConfig& config);

/// `m,rate_hz,p_chain,window_rate_hz,zpl_fraction,collection_eff,detector_eff,photons_counted`
/// for m = 1..max_m.
void write_rate_csv(std::ostream& out, const RateConfig& config, unsigned max_m);

/// Human-readable report: formulas, analytic and Monte Carlo tail counts,
/// absorption-law comparison and the rate at target_m.
void write_rate_report(std::ostream& out, const RateConfig& config, const ChainHistogram& histogram, unsigned target_m);

}  // namespace nvphoton::stats

#endif  // NVPHOTON_STATS_HPP
