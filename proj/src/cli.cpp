#include "nvphoton/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "nvphoton/format.hpp"
#include "nvphoton/protocol.hpp"
#include "nvphoton/stabilizer.hpp"
#include "nvphoton/stats.hpp"

namespace nvphoton::cli {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& value, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(where + ": '" + value + "' is not a number");
  }
  if (used != value.size() || !std::isfinite(v)) {
    throw std::invalid_argument(where + ": '" + value + "' is not a number");
  }
  return v;
}

bool parse_bool(const std::string& value, const std::string& where) {
  if (value == "true") {
    return true;
  }
  if (value == "false") {
    return false;
  }
  throw std::invalid_argument(where + ": expected true or false");
}

std::string mode_name(noise::BathMode mode) {
  switch (mode) {
    case noise::BathMode::UniformBounded:
      return "uniform";
    case noise::BathMode::Gaussian:
      return "gaussian";
    case noise::BathMode::Explicit:
      return "explicit";
  }
  return "uniform";
}

std::ofstream open_output(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path());
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot write " + path);
  }
  return f;
}

// Every effective parameter of a command, one key=value per line.
void write_sidecar(const std::string& csv_path, const std::string& command, const std::string& body) {
  std::ofstream f = open_output(csv_path + ".config");
  f << "command=" << command << "\n" << body;
}

struct RunOptions {
  std::string kind;
  unsigned photons = 0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string noise_file;
  bool post_select = false;
  std::string out;
};

struct SweepOptions {
  std::string kind;
  unsigned m_max = 0;
  std::uint64_t trials = 0;
  double gate_err_deg = 0.0;
  double bath_err_deg = 0.0;
  double electron_err_deg = 0.0;
  bool hahn_echo = false;
  std::string noise_file;
  std::uint64_t seed = 0;
  std::string out;
};

struct RatesOptions {
  double tau_us = 1.0;
  double window_us = 100.0;
  std::uint64_t reps = 1000;
  double zpl = 1.0;
  double collection = 1.0;
  double detector = 1.0;
  unsigned target_m = 10;
  bool count_last_photon = false;
  double hadamard_success = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_run(const RunOptions& o, std::ostream& out) {
  const ProtocolKind kind = *parse_protocol_kind(o.kind);
  NoiseSpec spec;
  if (!o.noise_file.empty()) {
    spec = load_noise_file(o.noise_file);
  }
  spec.model.validate();
  const Protocol& protocol = protocol_for(kind, o.photons);

  std::vector<ProtocolOutcome> outcomes(o.trials);
  const auto n = static_cast<std::int64_t>(o.trials);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t t = 0; t < n; ++t) {
    Rng rng = derive_stream(o.seed, {static_cast<std::uint64_t>(t)});
    outcomes[static_cast<std::size_t>(t)] = protocol.run(spec.model, rng, o.post_select);
  }

  const std::string path = resolve_output_path(o.out, "run.csv");
  std::ofstream csv = open_output(path);
  csv << "trial,achieved_m,branch,fidelity,attempts\n";
  double fidelity_sum = 0.0;
  double achieved_sum = 0.0;
  std::uint64_t completed = 0;
  std::uint64_t attempts = 0;
  std::vector<double> expectation_sum(protocol.generators().size(), 0.0);
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const ProtocolOutcome& r = outcomes[t];
    csv << t << ',' << r.achieved_m << ',' << (r.nuclear_branch ? std::to_string(*r.nuclear_branch) : "") << ','
        << (r.photon_state ? format_real(r.fidelity_vs_ideal) : "") << ',' << r.attempts << '\n';
    achieved_sum += r.achieved_m;
    attempts += r.attempts;
    if (r.photon_state) {
      ++completed;
      fidelity_sum += r.fidelity_vs_ideal;
      const std::vector<double> e = stabilizer_expectations(*r.photon_state, protocol.generators());
      for (std::size_t i = 0; i < e.size(); ++i) {
        expectation_sum[i] += e[i];
      }
    }
  }
  const double trials = static_cast<double>(o.trials);
  const double mean_f = completed ? fidelity_sum / static_cast<double>(completed) : 0.0;
  csv << "summary," << format_real(achieved_sum / trials) << ",," << (completed ? format_real(mean_f) : "") << ','
      << attempts << '\n';

  out << "kind=" << o.kind << " photons=" << o.photons << " trials=" << o.trials << " completed=" << completed
      << " mean_fidelity=" << format_short(mean_f) << "\n";
  if (completed) {
    for (std::size_t i = 0; i < expectation_sum.size(); ++i) {
      out << "stabilizer " << protocol.generators()[i].str() << ' '
          << format_real(expectation_sum[i] / static_cast<double>(completed)) << "\n";
    }
  }
  std::ostringstream cfg;
  cfg << "kind=" << o.kind << "\nphotons=" << o.photons << "\ntrials=" << o.trials << "\nseed=" << o.seed
      << "\npost_select=" << (o.post_select ? "true" : "false") << "\n"
      << serialize_noise(spec);
  write_sidecar(path, "run", cfg.str());
  out << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_sweep(const SweepOptions& o, const CLI::App& sub, std::ostream& out) {
  const ProtocolKind kind = *parse_protocol_kind(o.kind);
  NoiseSpec spec;
  if (!o.noise_file.empty()) {
    spec = load_noise_file(o.noise_file);
  }
  noise::NoiseModel& model = spec.model;
  if (sub.count("--gate-err-deg") || o.noise_file.empty()) {
    model.gate_angle_max = o.gate_err_deg * kDeg;
  }
  if (sub.count("--bath-err-deg") || o.noise_file.empty()) {
    model.bath_phase_max = o.bath_err_deg * kDeg;
  }
  if (sub.count("--electron-err-deg") || o.noise_file.empty()) {
    model.electron_phase_max = o.electron_err_deg * kDeg;
  }
  if (sub.count("--hahn-echo")) {
    model.hahn_echo = o.hahn_echo;
  }
  model.seed = o.seed;
  model.validate();

  const FidelityCurve curve = fidelity_curve(kind, o.m_max, model, o.trials, o.seed);
  const std::string path = resolve_output_path(o.out, "fidelity.csv");
  std::ofstream csv = open_output(path);
  write_curve_csv(csv, curve);
  std::ostringstream cfg;
  cfg << "kind=" << o.kind << "\nmmax=" << o.m_max << "\ntrials=" << o.trials << "\nseed=" << o.seed << "\n"
      << serialize_noise(spec);
  write_sidecar(path, "fidelity-sweep", cfg.str());
  for (const FidelityPoint& p : curve.points) {
    out << "m=" << p.m << " F=" << format_real(p.fidelity) << "\n";
  }
  out << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_rates(const RatesOptions& o, std::ostream& out) {
  stats::RateConfig cfg;
  cfg.tau = o.tau_us * 1e-6;
  cfg.cycle_time = o.window_us * 1e-6;
  cfg.repetitions = o.reps;
  cfg.zpl_fraction = o.zpl;
  cfg.collection_eff = o.collection;
  cfg.detector_eff = o.detector;
  cfg.count_disentangling_photon = o.count_last_photon;
  cfg.hadamard_success = o.hadamard_success;
  cfg.validate();
  if (o.target_m < 1) {
    throw std::invalid_argument("--target-m must be at least 1");
  }

  const stats::ChainHistogram hist = stats::simulate_sessions(cfg, o.seed);
  const std::string path = resolve_output_path(o.out, "rates.csv");
  {
    std::ofstream csv = open_output(path);
    stats::write_histogram_csv(csv, hist, cfg);
  }
  {
    std::ofstream csv = open_output(path + ".rates.csv");
    stats::write_rate_csv(csv, cfg, std::max(o.target_m, 1U));
  }
  std::ostringstream report;
  stats::write_rate_report(report, cfg, hist, o.target_m);
  {
    std::ofstream txt = open_output(path + ".report.txt");
    txt << report.str();
  }
  std::ostringstream sidecar;
  sidecar << "tau_us=" << format_real(o.tau_us) << "\nwindow_us=" << format_real(o.window_us) << "\nreps=" << o.reps
          << "\nzpl=" << format_real(o.zpl) << "\ncollection=" << format_real(o.collection)
          << "\ndetector=" << format_real(o.detector) << "\ntarget_m=" << o.target_m
          << "\ncount_last_photon=" << (o.count_last_photon ? "true" : "false")
          << "\nhadamard_success=" << format_real(o.hadamard_success) << "\nseed=" << o.seed << "\n";
  write_sidecar(path, "rates", sidecar.str());
  out << report.str() << "wrote " << path << "\n";
  return kExitOk;
}

}  // namespace

NoiseSpec parse_noise_config(std::istream& in) {
  NoiseSpec spec;
  noise::NoiseModel& m = spec.model;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    const std::string where = "noise config line " + std::to_string(line_no);
    if (eq == std::string::npos) {
      throw std::invalid_argument(where + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "gate_angle_max_deg") {
      m.gate_angle_max = parse_number(value, where) * kDeg;
    } else if (key == "bath_phase_max_deg") {
      m.bath_phase_max = parse_number(value, where) * kDeg;
    } else if (key == "electron_phase_max_deg") {
      m.electron_phase_max = parse_number(value, where) * kDeg;
    } else if (key == "bath_sigma_deg") {
      m.bath_sigma = parse_number(value, where) * kDeg;
    } else if (key == "electron_sigma_deg") {
      m.electron_sigma = parse_number(value, where) * kDeg;
    } else if (key == "bath_mode") {
      if (value == "uniform") {
        m.bath_mode = noise::BathMode::UniformBounded;
      } else if (value == "gaussian") {
        m.bath_mode = noise::BathMode::Gaussian;
      } else if (value == "explicit") {
        m.bath_mode = noise::BathMode::Explicit;
      } else {
        throw std::invalid_argument(where + ": bath_mode must be uniform, gaussian or explicit");
      }
    } else if (key == "hahn_echo") {
      m.hahn_echo = parse_bool(value, where);
    } else if (key == "tau_us") {
      m.tau = parse_number(value, where) * 1e-6;
    } else if (key == "hyperfine_rad_per_s") {
      m.hyperfine_coupling = parse_number(value, where);
    } else if (key == "bath_file") {
      spec.bath_file = value;
      try {
        m.bath = noise::load_bath_file(value);
      } catch (const std::runtime_error& e) {
        throw std::invalid_argument(where + ": " + e.what());
      }
    } else {
      throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
  }
  m.validate();
  return spec;
}

NoiseSpec load_noise_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw std::invalid_argument("cannot open noise file " + path);
  }
  return parse_noise_config(f);
}

std::string serialize_noise(const NoiseSpec& spec) {
  const noise::NoiseModel& m = spec.model;
  std::ostringstream s;
  s << "gate_angle_max_deg=" << format_real(m.gate_angle_max / kDeg) << "\n"
    << "bath_phase_max_deg=" << format_real(m.bath_phase_max / kDeg) << "\n"
    << "electron_phase_max_deg=" << format_real(m.electron_phase_max / kDeg) << "\n"
    << "bath_mode=" << mode_name(m.bath_mode) << "\n"
    << "bath_sigma_deg=" << format_real(m.bath_sigma / kDeg) << "\n"
    << "electron_sigma_deg=" << format_real(m.electron_sigma / kDeg) << "\n"
    << "hahn_echo=" << (m.hahn_echo ? "true" : "false") << "\n"
    << "tau_us=" << format_real(m.tau / 1e-6) << "\n"
    << "hyperfine_rad_per_s=" << format_real(m.hyperfine_coupling) << "\n";
  if (!spec.bath_file.empty()) {
    s << "bath_file=" << spec.bath_file << "\n";
  }
  return s.str();
}

std::string resolve_output_path(const std::string& out, const std::string& fallback_name) {
  if (!out.empty()) {
    return out;
  }
  const char* dir = std::getenv(kOutDirEnv);
  const std::filesystem::path base = (dir && *dir) ? std::filesystem::path(dir) : std::filesystem::path(".");
  return (base / fallback_name).string();
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"NV-center entangled photon string simulator", "nvphoton"};
  app.require_subcommand(1);

  RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run the protocol repeatedly and report outcomes");
  run_cmd->add_option("--kind", run.kind, "ghz or cluster")->required()->check(CLI::IsMember({"ghz", "cluster"}));
  run_cmd->add_option("--photons", run.photons, "Photons in the chain (1..12)")
      ->required()
      ->check(CLI::Range(kMinPhotons, kMaxPhotons));
  run_cmd->add_option("--trials", run.trials, "Independent runs")->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--noise", run.noise_file, "key=value noise file");
  run_cmd->add_flag("--post-select", run.post_select, "Retry shelved runs until all absorptions succeed");
  run_cmd->add_option("--out", run.out, "Output CSV");

  SweepOptions sweep;
  CLI::App* sweep_cmd = app.add_subcommand("fidelity-sweep", "Fidelity against chain length under noise");
  sweep_cmd->add_option("--kind", sweep.kind, "ghz or cluster")->required()->check(CLI::IsMember({"ghz", "cluster"}));
  sweep_cmd->add_option("--mmax", sweep.m_max, "Largest chain length (2..12)")->required()->check(CLI::Range(2U, kMaxPhotons));
  sweep_cmd->add_option("--trials", sweep.trials, "Post-selected runs per length")
      ->required()
      ->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
  sweep_cmd->add_option("--gate-err-deg", sweep.gate_err_deg, "Gate rotation-angle error bound (degrees)")
      ->check(CLI::Range(0.0, 180.0));
  sweep_cmd->add_option("--bath-err-deg", sweep.bath_err_deg, "Nuclear phase bound per interval (degrees)")
      ->check(CLI::Range(0.0, 180.0));
  sweep_cmd->add_option("--electron-err-deg", sweep.electron_err_deg, "Electron phase bound per interval (degrees)")
      ->check(CLI::Range(0.0, 180.0));
  sweep_cmd->add_flag("--hahn-echo", sweep.hahn_echo, "Refocus the electron each interval");
  sweep_cmd->add_option("--noise", sweep.noise_file, "key=value noise file (flags override)");
  sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
  sweep_cmd->add_option("--out", sweep.out, "Output CSV");

  RatesOptions rates;
  CLI::App* rates_cmd = app.add_subcommand("rates", "Chain-length statistics and detected event rates");
  rates_cmd->add_option("--tau-us", rates.tau_us, "Photon spacing (us)");
  rates_cmd->add_option("--window-us", rates.window_us, "Operation window (us)");
  rates_cmd->add_option("--reps", rates.reps, "Simulated windows")->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
  rates_cmd->add_option("--zpl", rates.zpl, "Zero-phonon-line fraction")->check(CLI::Range(0.0, 1.0));
  rates_cmd->add_option("--collection", rates.collection, "Collection efficiency")->check(CLI::Range(0.0, 1.0));
  rates_cmd->add_option("--detector", rates.detector, "Detector efficiency")->check(CLI::Range(0.0, 1.0));
  rates_cmd->add_option("--target-m", rates.target_m, "Chain length for the rate line")->check(CLI::Range(1U, 64U));
  rates_cmd->add_flag("--count-last-photon", rates.count_last_photon, "Include the disentangling photon in the efficiency");
  rates_cmd->add_option("--hadamard-success", rates.hadamard_success, "Per-cycle Hadamard success probability")
      ->check(CLI::Range(0.0, 1.0));
  rates_cmd->add_option("--seed", rates.seed, "Master seed");
  rates_cmd->add_option("--out", rates.out, "Histogram CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*run_cmd) {
      return cmd_run(run, out);
    }
    if (*sweep_cmd) {
      return cmd_sweep(sweep, *sweep_cmd, out);
    }
    return cmd_rates(rates, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace nvphoton::cli
