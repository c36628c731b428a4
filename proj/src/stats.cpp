#include "nvphoton/stats.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nvphoton/format.hpp"
#include "nvphoton/rng.hpp"

namespace nvphoton::stats {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

unsigned chain_length(const RateConfig& config, unsigned slots, Rng& rng) {
  const double p = 0.5 * config.hadamard_success;
  unsigned length = 1;
  while (length < slots && rng.bernoulli(p)) {
    ++length;
  }
  return length;
}

ChainHistogram to_histogram(const std::vector<unsigned>& lengths) {
  ChainHistogram h;
  h.repetitions = lengths.size();
  for (unsigned len : lengths) {
    ++h.counts[len];
  }
  return h;
}

ChainHistogram simulate(const RateConfig& config, std::uint64_t seed, bool parallel) {
  config.validate();
  const unsigned slots = config.slots();
  std::vector<unsigned> lengths(config.repetitions);
  const auto n = static_cast<std::int64_t>(config.repetitions);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
      Rng rng = derive_stream(seed, {static_cast<std::uint64_t>(r)});
      lengths[static_cast<std::size_t>(r)] = chain_length(config, slots, rng);
    }
  } else {
    for (std::int64_t r = 0; r < n; ++r) {
      Rng rng = derive_stream(seed, {static_cast<std::uint64_t>(r)});
      lengths[static_cast<std::size_t>(r)] = chain_length(config, slots, rng);
    }
  }
  return to_histogram(lengths);
}

}  // namespace

double p_chain(unsigned m) {
  if (m < 1) {
    throw std::invalid_argument("chain length must be at least 1");
  }
  return std::ldexp(1.0, 1 - static_cast<int>(m));
}

double absorption_count_exact(unsigned N, unsigned n) {
  if (n > N) {
    throw std::invalid_argument("absorption count exceeds the number of photons");
  }
  const double log_binom = std::lgamma(N + 1.0) - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
  return std::exp(log_binom - N * std::numbers::ln2);
}

double absorption_count_gaussian(unsigned N, double n) {
  if (N < 1) {
    throw std::invalid_argument("N must be at least 1");
  }
  const double d = N - n;
  return 2.0 / std::sqrt(std::numbers::pi * N) * std::exp(-2.0 * d * d / N);
}

double absorption_count_gaussian_centered(unsigned N, double n) {
  if (N < 1) {
    throw std::invalid_argument("N must be at least 1");
  }
  const double d = n - N / 2.0;
  return std::sqrt(2.0 / (std::numbers::pi * N)) * std::exp(-2.0 * d * d / N);
}

unsigned RateConfig::slots() const { return static_cast<unsigned>(std::llround(cycle_time / tau)); }

void RateConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("tau must be positive");
  }
  if (!(cycle_time >= tau) || !std::isfinite(cycle_time)) {
    throw std::invalid_argument("cycle time must be at least tau");
  }
  if (repetitions < 1) {
    throw std::invalid_argument("repetitions must be at least 1");
  }
  check_probability(zpl_fraction, "zpl_fraction");
  check_probability(collection_eff, "collection_eff");
  check_probability(detector_eff, "detector_eff");
  check_probability(hadamard_success, "hadamard_success");
  if (slots() < 1) {
    throw std::invalid_argument("window holds no photon slot");
  }
}

std::uint64_t ChainHistogram::count_at_least(unsigned length) const {
  std::uint64_t total = 0;
  for (auto it = counts.lower_bound(length); it != counts.end(); ++it) {
    total += it->second;
  }
  return total;
}

ChainHistogram simulate_sessions(const RateConfig& config, std::uint64_t seed) { return simulate(config, seed, true); }

namespace reference {
ChainHistogram simulate_sessions_serial(const RateConfig& config, std::uint64_t seed) {
  return simulate(config, seed, false);
}
}  // namespace reference

double detected_event_rate(const RateConfig& config, unsigned m) {
  config.validate();
  const double eff = config.zpl_fraction * config.collection_eff * config.detector_eff;
  const int photons = static_cast<int>(m) + (config.count_disentangling_photon ? 1 : 0);
  return p_chain(m) * std::pow(eff, photons) / config.cycle_time;
}

void write_histogram_csv(std::ostream& out, const ChainHistogram& histogram, const RateConfig& config) {
  out << "length,count\n";
  for (unsigned len = 1; len <= config.slots(); ++len) {
    const auto it = histogram.counts.find(len);
    out << len << ',' << (it == histogram.counts.end() ? 0 : it->second) << '\n';
  }
}

void write_rate_csv(std::ostream& out, const RateConfig& config, unsigned max_m) {
  out << "m,rate_hz,p_chain,window_rate_hz,zpl_fraction,collection_eff,detector_eff,photons_counted\n";
  for (unsigned m = 1; m <= max_m; ++m) {
    out << m << ',' << format_real(detected_event_rate(config, m)) << ',' << format_real(p_chain(m)) << ','
        << format_real(1.0 / config.cycle_time) << ',' << format_real(config.zpl_fraction) << ','
        << format_real(config.collection_eff) << ',' << format_real(config.detector_eff) << ','
        << (m + (config.count_disentangling_photon ? 1 : 0)) << '\n';
  }
}

void write_rate_report(std::ostream& out, const RateConfig& config, const ChainHistogram& histogram, unsigned target_m) {
  const unsigned slots = config.slots();
  out << "# chain statistics\n"
      << "# P(length >= m) = 2^(1-m); first excitation always bright, later ones pass with p = 1/2";
  if (config.hadamard_success != 1.0) {
    out << " * " << format_short(config.hadamard_success) << " (Hadamard success)";
  }
  out << "\n"
      << "# N = round(window / tau) = " << slots << ", repetitions = " << histogram.repetitions << "\n"
      << "# m  analytic_count  monte_carlo_count\n";
  for (unsigned m = 1; m <= std::min(slots, 12U); ++m) {
    out << "#  " << m << "  " << format_short(p_chain(m) * static_cast<double>(histogram.repetitions)) << "  "
        << histogram.count_at_least(m) << "\n";
  }
  out << "# absorption count law over N slots\n"
      << "#   exact: C(N,n) 2^-N, mode n = " << slots / 2 << ", P = " << format_short(absorption_count_exact(slots, slots / 2))
      << "\n"
      << "#   printed Gaussian 2/sqrt(pi N) exp(-2 (N-n)^2/N) peaks at n = N with value "
      << format_short(absorption_count_gaussian(slots, slots)) << "\n"
      << "#   centered Gaussian sqrt(2/(pi N)) exp(-2 (n-N/2)^2/N) at n = N/2: "
      << format_short(absorption_count_gaussian_centered(slots, slots / 2.0)) << "\n"
      << "# detected rate = p_chain(m) * (zpl * collection * detector)^k / window, k = m"
      << (config.count_disentangling_photon ? " + 1" : "") << "\n"
      << "#   zpl = " << format_short(config.zpl_fraction) << ", collection = " << format_short(config.collection_eff)
      << ", detector = " << format_short(config.detector_eff) << ", window = " << format_short(config.cycle_time)
      << " s, no dead time between windows\n"
      << "#   rate(m = " << target_m << ") = " << format_short(detected_event_rate(config, target_m)) << " Hz\n"
      << "#   window rate without losses = " << format_short(p_chain(target_m) / config.cycle_time) << " Hz\n";
  if (config.zpl_fraction * config.collection_eff * config.detector_eff < 1.0) {
    out << "#   note: a cavity-assisted figure of about one 10-photon string per second is an order-of-magnitude\n"
        << "#   claim; per-photon stacking of the efficiencies above gives the rate printed here.\n";
  }
}

}  // namespace nvphoton::stats
