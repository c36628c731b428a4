// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "nvphoton/calibration.hpp"
#include "nvphoton/cli.hpp"
#include "nvphoton/density_matrix.hpp"
#include "nvphoton/format.hpp"
#include "nvphoton/nv_model.hpp"
#include "nvphoton/protocol.hpp"
#include "nvphoton/stats.hpp"
#include "test_support.hpp"

namespace {

using namespace nvphoton;

constexpr double kTenDeg = 10.0 * std::numbers::pi / 180.0;
const noise::NoiseModel kIdeal = noise::NoiseModel::ideal();

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

ChainControl forced(int branch) {
  ChainControl c;
  c.deterministic_bright = true;
  c.forced_branch = branch;
  return c;
}

Verdict ideal_ghz_pipeline() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  double worst = 1.0;
  for (unsigned m = 2; m <= 8; ++m) {
    const Protocol& p = protocol_for(ProtocolKind::Ghz, m);
    for (int b = 0; b < 2; ++b) {
      Rng rng(m * 10 + b);
      const ProtocolOutcome o = p.run(kIdeal, rng, true, forced(b));
      worst = std::min(worst, o.fidelity_vs_ideal);
      v.require(o.photon_state.has_value() && std::abs(o.fidelity_vs_ideal - 1.0) <= 1e-9,
                "m=" + std::to_string(m) + " branch " + std::to_string(b) + " F=" + format_short(o.fidelity_vs_ideal));
    }
    // Sampled branch and post-selection path as well.
    Rng rng(m);
    const ProtocolOutcome o = run_protocol(ProtocolKind::Ghz, m, kIdeal, rng, true);
    v.require(std::abs(o.fidelity_vs_ideal - 1.0) <= 1e-9, "sampled m=" + std::to_string(m));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(secs < 10.0, "runtime " + format_short(secs) + " s");
  if (v.pass) {
    v.detail = "min F=" + format_short(worst) + ", " + format_short(secs) + " s";
  }
  return v;
}

Verdict ideal_cluster_pipeline() {
  Verdict v;
  double worst = 0.0;
  for (unsigned m = 2; m <= 8; ++m) {
    for (int b = 0; b < 2; ++b) {
      Rng rng(m * 10 + b);
      const ProtocolOutcome o = protocol_for(ProtocolKind::Cluster, m).run(kIdeal, rng, true, forced(b));
      if (!o.photon_state) {
        v.require(false, "no output at m=" + std::to_string(m));
        continue;
      }
      for (double e : stabilizer_expectations(*o.photon_state, cluster_generators(m))) {
        worst = std::max(worst, std::abs(e - 1.0));
      }
    }
  }
  v.require(worst <= 1e-10, "max |<K>-1|=" + format_short(worst));
  if (v.pass) {
    v.detail = "max |<K>-1|=" + format_short(worst);
  }
  return v;
}

Verdict disentanglement_control() {
  Verdict v;
  const StateVector two = nv::reexcite_without_cnot(nv::absorb_emit(nv::prepare_initial(0), 1), 2);
  const SubsystemLabel p1[1] = {SubsystemLabel::photon(1)};
  const std::size_t rank = schmidt_rank(two, p1);
  const double s1 = schmidt_coefficients(two, p1)[1];
  v.require(rank == 1, "rank " + std::to_string(rank));
  v.require(s1 < 1e-12, "second singular value " + format_short(s1));
  if (v.pass) {
    v.detail = "rank 1, s2=" + format_short(s1);
  }
  return v;
}

Verdict bright_dark_statistics() {
  Verdict v;
  constexpr unsigned kM = 6;
  constexpr int kRuns = 10000;
  std::vector<double> reached(kM + 2, 0.0);
  std::vector<double> passed(kM + 2, 0.0);
  for (int i = 0; i < kRuns; ++i) {
    Rng rng = derive_stream(4, {static_cast<std::uint64_t>(i)});
    const ProtocolOutcome o = run_protocol(ProtocolKind::Ghz, kM, kIdeal, rng, false);
    for (unsigned k = 1; k <= o.excitations_passed + 1 && k <= kM + 1; ++k) {
      reached[k] += 1.0;
      passed[k] += k <= o.excitations_passed ? 1.0 : 0.0;
    }
  }
  std::ostringstream d;
  for (unsigned k = 2; k <= kM + 1; ++k) {
    if (reached[k] < 100) {
      continue;
    }
    const double rate = passed[k] / reached[k];
    const double sigma = std::sqrt(0.25 / reached[k]);
    v.require(std::abs(rate - 0.5) <= 3 * sigma, "cycle " + std::to_string(k) + " rate " + format_short(rate));
    d << " k" << k << "=" << format_short(std::round(rate * 1e4) / 1e4);
  }
  if (v.pass) {
    v.detail = "pass rates" + d.str();
  }
  return v;
}

Verdict session_statistics() {
  Verdict v;
  stats::RateConfig c;
  c.repetitions = 1000;
  const stats::ChainHistogram small = stats::simulate_sessions(c, 2024);
  const auto ge5 = small.count_at_least(5);
  const auto ge10 = small.count_at_least(10);
  v.require(ge5 >= 39 && ge5 <= 86, "count(>=5)=" + std::to_string(ge5));
  v.require(ge10 <= 8, "count(>=10)=" + std::to_string(ge10));
  c.repetitions = 100000;
  const stats::ChainHistogram big = stats::simulate_sessions(c, 2025);
  const double n = static_cast<double>(c.repetitions);
  for (unsigned m = 1; m <= 8; ++m) {
    const double p = stats::p_chain(m);
    const double emp = static_cast<double>(big.count_at_least(m)) / n;
    v.require(std::abs(emp - p) <= 3 * std::sqrt(p * (1 - p) / n) + 1e-12,
              "P(>=" + std::to_string(m) + ")=" + format_short(emp));
  }
  if (v.pass) {
    v.detail = "count(>=5)=" + std::to_string(ge5) + ", count(>=10)=" + std::to_string(ge10);
  }
  return v;
}

StateVector kicked_joint(double eta) {
  ChainControl c;
  c.deterministic_bright = true;
  c.kick_interval = 1;
  c.kick_angle = eta;
  Rng rng(0);
  return *run_chain(calibrated_sequence(ProtocolKind::Ghz), 2, kIdeal, rng, c).joint;
}

Verdict phase_kick() {
  Verdict v;
  const double eta = kTenDeg;
  const StateVector j0 = kicked_joint(0.0);
  const StateVector j1 = kicked_joint(std::numbers::pi / 2);
  const StateVector je = kicked_joint(eta);
  double err = 0.0;
  for (std::size_t i = 0; i < je.dimension(); ++i) {
    err = std::max(err, std::abs(je.amplitude(i) - (std::cos(eta) * j0.amplitude(i) + std::sin(eta) * j1.amplitude(i))));
  }
  v.require(err <= 1e-10, "amplitude error " + format_short(err));
  v.require(std::abs(j0.inner(j1)) <= 1e-12, "components not orthogonal");

  const Protocol& p = protocol_for(ProtocolKind::Ghz, 2);
  std::vector<WeightedState> ensemble;
  for (double sign : {1.0, -1.0}) {
    for (int b = 0; b < 2; ++b) {
      ChainControl c = forced(b);
      c.kick_interval = 1;
      c.kick_angle = sign * eta;
      Rng rng(1);
      const ProtocolOutcome o = p.run(kIdeal, rng, true, c);
      ensemble.push_back({0.25, *o.photon_state});
    }
  }
  const double f = fidelity_pure_mixed(p.target(), density_from_ensemble(ensemble));
  const double want = std::pow(std::cos(eta), 2);
  v.require(std::abs(f - want) <= 1e-9, "ensemble F=" + format_short(f) + " vs " + format_short(want));
  v.require(std::abs(want - 0.96985) < 5e-6, "cos^2 oracle");
  if (v.pass) {
    v.detail = "amplitude error " + format_short(err) + ", F=" + format_short(std::round(f * 1e6) / 1e6);
  }
  return v;
}

Verdict fidelity_ordering() {
  Verdict v;
  constexpr std::uint64_t kTrials = 1000;
  constexpr std::uint64_t kSeed = 2024;
  noise::NoiseModel both;
  both.gate_angle_max = kTenDeg;
  both.bath_phase_max = kTenDeg;
  noise::NoiseModel gate_only;
  gate_only.gate_angle_max = kTenDeg;
  noise::NoiseModel bath_only;
  bath_only.bath_phase_max = kTenDeg;
  const FidelityCurve fb = fidelity_curve(ProtocolKind::Ghz, 10, both, kTrials, kSeed);
  const FidelityCurve fg = fidelity_curve(ProtocolKind::Ghz, 10, gate_only, kTrials, kSeed);
  const FidelityCurve fn = fidelity_curve(ProtocolKind::Ghz, 10, bath_only, kTrials, kSeed);
  for (std::size_t i = 1; i < fb.points.size(); ++i) {
    v.require(fb.points[i].fidelity <= fb.points[i - 1].fidelity,
              "F rises at m=" + std::to_string(fb.points[i].m));
  }
  for (std::size_t i = 0; i < fg.points.size(); ++i) {
    v.require(fn.points[i].fidelity >= fg.points[i].fidelity,
              "bath-only below gate-only at m=" + std::to_string(fg.points[i].m));
  }
  if (v.pass) {
    auto r = [](double x) { return format_short(std::round(x * 1e4) / 1e4); };
    v.detail = "F_2..F_10 " + r(fb.points.front().fidelity) + ".." + r(fb.points.back().fidelity) + "; gate-only F_10 " +
               r(fg.points.back().fidelity) + ", bath-only F_10 " + r(fn.points.back().fidelity);
  }
  return v;
}

Verdict hahn_echo() {
  Verdict v;
  noise::NoiseModel m;
  m.electron_phase_max = kTenDeg;
  m.hyperfine_coupling = 2.0 * std::numbers::pi * 2.16e6;
  m.hahn_echo = true;
  double worst = 1.0;
  for (ProtocolKind kind : {ProtocolKind::Ghz, ProtocolKind::Cluster}) {
    for (const FidelityPoint& p : fidelity_curve(kind, 8, m, 50, 8).points) {
      worst = std::min(worst, p.fidelity);
    }
    for (int b = 0; b < 2; ++b) {
      Rng rng(b);
      worst = std::min(worst, protocol_for(kind, 1).run(m, rng, true, forced(b)).fidelity_vs_ideal);
    }
  }
  v.require(std::abs(worst - 1.0) <= 1e-9, "min F=" + format_short(worst));
  m.hahn_echo = false;
  const double off = fidelity_curve(ProtocolKind::Ghz, 4, m, 50, 8).points.back().fidelity;
  v.require(off < 1.0 - 1e-6, "echo off should lose fidelity");
  if (v.pass) {
    v.detail = "min F=" + format_short(worst) + " (echo off F_4=" + format_short(std::round(off * 1e4) / 1e4) + ")";
  }
  return v;
}

Verdict rate_report() {
  Verdict v;
  stats::RateConfig c;
  const double rate = stats::detected_event_rate(c, 10);
  v.require(std::abs(rate - 1e4 * std::pow(2.0, -9)) <= 1e-9, "rate " + format_short(rate));
  c.zpl_fraction = 0.7;
  c.collection_eff = 0.9;
  std::ostringstream report;
  stats::write_rate_report(report, c, stats::simulate_sessions(c, 9), 10);
  v.require(report.str().find("order-of-magnitude") != std::string::npos, "lossy report lacks the note");
  if (v.pass) {
    v.detail = "lossless " + format_short(rate) + " /s, lossy " + format_short(stats::detected_event_rate(c, 10)) + " /s";
  }
  return v;
}

Verdict chain_model_equivalence() {
  Verdict v;
  constexpr int kRuns = 10000;
  std::ostringstream d;
  for (unsigned n = 2; n <= 6; ++n) {
    std::vector<double> quantum(n + 1, 0.0);
    for (int i = 0; i < kRuns; ++i) {
      Rng rng = derive_stream(1000 + n, {static_cast<std::uint64_t>(i)});
      quantum[run_protocol(ProtocolKind::Ghz, n, kIdeal, rng, false).achieved_m] += 1.0;
    }
    stats::RateConfig c;
    c.cycle_time = n * c.tau;
    c.repetitions = kRuns;
    std::vector<double> classical(n + 1, 0.0);
    for (const auto& [len, count] : stats::simulate_sessions(c, 2000 + n).counts) {
      classical[len] = static_cast<double>(count);
    }
    const double p = testing::chi_square_homogeneity(quantum, classical);
    v.require(p > 0.01, "N=" + std::to_string(n) + " p=" + format_short(p));
    d << " N" << n << ":p=" << format_short(std::round(p * 1e3) / 1e3);
  }
  if (v.pass) {
    v.detail = d.str().substr(1);
  }
  return v;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict cli_determinism() {
  Verdict v;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "nvphoton_acceptance";
  fs::remove_all(dir);
  const std::vector<std::vector<std::string>> commands = {
      {"run", "--kind", "cluster", "--photons", "4", "--trials", "40", "--seed", "11", "--post-select"},
      {"fidelity-sweep", "--kind", "ghz", "--mmax", "5", "--trials", "100", "--gate-err-deg", "10", "--bath-err-deg",
       "10", "--seed", "12"},
      {"rates", "--reps", "2000", "--seed", "13"}};
  for (const auto& base : commands) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      auto args = base;
      const fs::path out = dir / (base[0] + std::to_string(rep) + ".csv");
      args.insert(args.end(), {"--out", out.string()});
      std::ostringstream sink;
      const int code = cli::main_with_args(args, sink, sink);
      v.require(code == cli::kExitOk, base[0] + " exit " + std::to_string(code));
      const std::string text = slurp(out);
      if (rep == 0) {
        first = text;
      } else {
        v.require(!text.empty() && text == first, base[0] + " output differs");
      }
    }
  }
  fs::remove_all(dir);
  if (v.pass) {
    v.detail = "run, fidelity-sweep, rates byte-identical";
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"ideal GHZ pipeline", ideal_ghz_pipeline},
      {"ideal cluster pipeline", ideal_cluster_pipeline},
      {"disentanglement control", disentanglement_control},
      {"bright/dark statistics", bright_dark_statistics},
      {"chain-length statistics", session_statistics},
      {"nuclear phase kick", phase_kick},
      {"fidelity under noise", fidelity_ordering},
      {"Hahn echo", hahn_echo},
      {"rate report", rate_report},
      {"classical/quantum equivalence", chain_model_equivalence},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += v.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
