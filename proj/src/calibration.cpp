#include "nvphoton/calibration.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "nvphoton/calibrated_sequences.hpp"
#include "nvphoton/format.hpp"

namespace nvphoton {

namespace {

using Steps = std::vector<GateStep>;

constexpr GateStep kPeriodicAlphabet[] = {
    {GateKind::HadamardE, Placement::AfterEmission},     {GateKind::ControlledXEN, Placement::AfterEmission},
    {GateKind::ControlledYEN, Placement::AfterEmission}, {GateKind::PhaseE, Placement::AfterEmission},
    {GateKind::HadamardE, Placement::BeforeExcitation},
};

constexpr GateStep kFirstCycleAlphabet[] = {
    {GateKind::HadamardE, Placement::AfterEmission},
    {GateKind::ControlledXEN, Placement::AfterEmission},
    {GateKind::ControlledYEN, Placement::AfterEmission},
    {GateKind::PhaseE, Placement::AfterEmission},
};

bool has_controlled(const Steps& steps) {
  return std::any_of(steps.begin(), steps.end(), [](const GateStep& s) { return is_two_qubit(s.gate); });
}

template <std::size_t N>
std::vector<Steps> words(const GateStep (&alphabet)[N], std::size_t max_len) {
  std::vector<Steps> out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::size_t> digits(len, 0);
    while (true) {
      Steps w;
      for (std::size_t d : digits) {
        w.push_back(alphabet[d]);
      }
      if (has_controlled(w)) {
        out.push_back(std::move(w));
      }
      std::size_t pos = len;
      while (pos > 0 && ++digits[pos - 1] == N) {
        digits[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) {
        break;
      }
    }
  }
  return out;
}

Steps after_steps(const Steps& steps) {
  Steps out;
  std::copy_if(steps.begin(), steps.end(), std::back_inserter(out),
               [](const GateStep& s) { return s.placement == Placement::AfterEmission; });
  return out;
}

// Minimum corrected fidelity over the calibration lengths; stops at the
// first length that fails.
double score(ProtocolKind kind, const GateSequence& seq, std::map<unsigned, BranchCorrection>* corrections) {
  double worst = 1.0;
  for (unsigned m : kCalibrationLengths) {
    CorrectionFit fit;
    try {
      fit = fit_correction(kind, m, seq);
    } catch (const InvariantError&) {
      return 0.0;
    }
    worst = std::min(worst, fit.worst_fidelity);
    if (fit.worst_fidelity < 1.0 - 1e-9) {
      return worst;
    }
    if (corrections) {
      (*corrections)[m] = fit.correction;
    }
  }
  return worst;
}

std::string step_literal(const GateStep& s) {
  const char* gate = s.gate == GateKind::HadamardE       ? "HadamardE"
                     : s.gate == GateKind::ControlledXEN ? "ControlledXEN"
                     : s.gate == GateKind::ControlledYEN ? "ControlledYEN"
                                                         : "PhaseE";
  const char* placement = s.placement == Placement::AfterEmission ? "AfterEmission" : "BeforeExcitation";
  return std::string("{GateKind::") + gate + ", Placement::" + placement + "}";
}

std::string steps_literal(const Steps& steps) {
  std::string s = "{";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    s += (i ? ", " : "") + step_literal(steps[i]);
  }
  return s + "}";
}

}  // namespace

CalibrationResult calibrate_sequence(ProtocolKind kind) {
  const std::vector<Steps> periodic_words = words(kPeriodicAlphabet, kMaxPeriodicGates);
  const std::vector<Steps> first_words = words(kFirstCycleAlphabet, kMaxFirstCycleGates);
  CalibrationResult result;
  GateSequence best;
  double best_score = -1.0;
  for (const Steps& periodic : periodic_words) {
    std::vector<Steps> firsts;
    const Steps same = after_steps(periodic);
    if (has_controlled(same)) {
      firsts.push_back(same);
    }
    firsts.insert(firsts.end(), first_words.begin(), first_words.end());
    for (const Steps& first : firsts) {
      const GateSequence candidate{first, periodic};
      ++result.candidates_examined;
      const double s = score(kind, candidate, nullptr);
      if (s > best_score) {
        best_score = s;
        best = candidate;
      }
      if (s >= 1.0 - 1e-9) {
        result.sequence = candidate;
        score(kind, candidate, &result.corrections);
        return result;
      }
    }
  }
  throw InvariantError("no " + to_string(kind) + " sequence found; best " + describe(best) +
                       " with corrected F = " + format_real(best_score));
}

GateSequence calibrated_sequence(ProtocolKind kind) {
  return kind == ProtocolKind::Ghz ? calibrated::ghz() : calibrated::cluster();
}

std::string generate_constants_header(const CalibrationResult& ghz, const CalibrationResult& cluster) {
  std::ostringstream out;
  out << "// Generated by nvphoton_calibrate. Do not edit.\n"
         "#ifndef NVPHOTON_CALIBRATED_SEQUENCES_HPP\n"
         "#define NVPHOTON_CALIBRATED_SEQUENCES_HPP\n\n"
         "#include \"nvphoton/protocol.hpp\"\n\n"
         "namespace nvphoton::calibrated {\n\n";
  const auto emit = [&](const char* name, const CalibrationResult& r) {
    out << "// " << describe(r.sequence) << " (" << r.candidates_examined << " candidates)\n"
        << "inline GateSequence " << name << "() {\n"
        << "  return {" << steps_literal(r.sequence.first_cycle) << ",\n"
        << "          " << steps_literal(r.sequence.periodic) << "};\n"
        << "}\n\n";
  };
  emit("ghz", ghz);
  emit("cluster", cluster);
  out << "}  // namespace nvphoton::calibrated\n\n#endif  // NVPHOTON_CALIBRATED_SEQUENCES_HPP\n";
  return out.str();
}

}  // namespace nvphoton
