#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "nvphoton/gates.hpp"
#include "nvphoton/noise.hpp"
#include "nvphoton/nv_model.hpp"
#include "test_support.hpp"

namespace nvphoton {
namespace {

using noise::BathMode;
using noise::NoiseModel;

constexpr double kTenDeg = 10.0 * std::numbers::pi / 180.0;
const SubsystemLabel kE = SubsystemLabel::electron();
const SubsystemLabel kN = SubsystemLabel::nuclear();

TEST(Dipolar, SpinOnZAxisGivesMinusTwiceTheScale) {
  const noise::PhysicalConstants c;
  const double r = 1.2e-9;
  const double scale = 1e-7 * 1.054571817e-34 * 1.76085963023e11 * 6.728284e7 / (r * r * r);
  EXPECT_NEAR(noise::secular_coupling(Eigen::Vector3d(0, 0, r), c) / scale, -2.0, 1e-12);
  EXPECT_NEAR(noise::secular_coupling(Eigen::Vector3d(r, 0, 0), c) / scale, 1.0, 1e-12);
}

TEST(Dipolar, TensorIsSymmetricAndTraceless) {
  const Eigen::Matrix3d t = noise::dipolar_tensor(Eigen::Vector3d(0.4e-9, -1e-9, 0.7e-9), {});
  EXPECT_LT((t - t.transpose()).cwiseAbs().maxCoeff(), 1e-9 * t.cwiseAbs().maxCoeff());
  EXPECT_NEAR(t.trace() / t.cwiseAbs().maxCoeff(), 0.0, 1e-12);
  EXPECT_THROW(noise::dipolar_tensor(Eigen::Vector3d::Zero(), {}), std::invalid_argument);
}

TEST(BathTable, ParsesNanometersAndComments) {
  const noise::BathConfig b = noise::load_bath_file(NVPHOTON_DATA_DIR "/bath_two_spins.txt");
  ASSERT_EQ(b.positions.size(), 2U);
  EXPECT_NEAR(b.positions[0].z(), 1e-9, 1e-24);
  EXPECT_NEAR(b.positions[1].x(), 1.5e-9, 1e-24);
}

TEST(BathTable, ReportsBadLines) {
  std::istringstream bad("0 0 1\n1 2\n");
  try {
    noise::parse_bath_table(bad);
    FAIL() << "expected a parse error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream origin("0 0 0\n");
  EXPECT_THROW(noise::parse_bath_table(origin), std::runtime_error);
  EXPECT_THROW(noise::load_bath_file("/nonexistent/bath.txt"), std::runtime_error);
}

TEST(Disorder, ZeroBoundGivesZeroDetuning) {
  NoiseModel m;
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(noise::sample_run_disorder(m, rng).nuclear_detuning, 0.0);
  }
}

TEST(Disorder, UniformStaysWithinBound) {
  NoiseModel m;
  m.bath_phase_max = kTenDeg;
  m.tau = 2e-6;
  Rng rng(2);
  double lo = 0.0;
  double hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double phase = noise::sample_run_disorder(m, rng).nuclear_detuning * m.tau;
    EXPECT_LE(std::abs(phase), kTenDeg + 1e-15);
    lo = std::min(lo, phase);
    hi = std::max(hi, phase);
  }
  EXPECT_LT(lo, -0.99 * kTenDeg);
  EXPECT_GT(hi, 0.99 * kTenDeg);
}

TEST(Disorder, GaussianWidthMatchesSigma) {
  NoiseModel m;
  m.bath_mode = BathMode::Gaussian;
  m.bath_sigma = 0.05;
  Rng rng(3);
  constexpr int kSamples = 100000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = noise::sample_run_disorder(m, rng).nuclear_detuning * m.tau;
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / kSamples;
  const double sd = std::sqrt(sum2 / kSamples - mean * mean);
  EXPECT_NEAR(sd / m.bath_sigma, 1.0, 0.02);
}

TEST(Disorder, RunsAreIndependent) {
  NoiseModel m;
  m.bath_phase_max = kTenDeg;
  Rng rng(4);
  constexpr int kSamples = 20000;
  std::vector<double> x(kSamples);
  for (double& v : x) {
    v = noise::sample_run_disorder(m, rng).nuclear_detuning;
  }
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i + 1 < kSamples; ++i) {
    num += x[i] * x[i + 1];
    den += x[i] * x[i];
  }
  EXPECT_LT(std::abs(num / den), 3.0 / std::sqrt(kSamples));
}

TEST(Disorder, ExplicitSingleSpin) {
  NoiseModel m;
  m.bath_mode = BathMode::Explicit;
  noise::BathConfig b;
  b.positions.emplace_back(0.0, 0.0, 1e-9);
  m.bath = b;
  const double a = noise::secular_coupling(b.positions[0], b.constants);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const noise::RunDisorder d = noise::sample_run_disorder(m, rng);
    EXPECT_NEAR(std::abs(d.electron_detuning), std::abs(a) / 2, 1e-9 * std::abs(a));
    EXPECT_NEAR(d.nuclear_detuning, b.constants.gamma_n / b.constants.gamma_e * d.electron_detuning,
                1e-12 * std::abs(a));
  }
}

TEST(Disorder, ExplicitBathApproachesGaussian) {
  Rng placement(6);
  NoiseModel m;
  m.bath_mode = BathMode::Explicit;
  m.bath = noise::random_shell_bath(200, 1.5e-9, 3e-9, placement);
  double var = 0.0;
  for (const auto& p : m.bath->positions) {
    const double a = noise::secular_coupling(p, m.bath->constants);
    var += a * a / 4.0;
  }
  const boost::math::normal law(0.0, std::sqrt(var));
  constexpr int kBins = 20;
  constexpr int kSamples = 20000;
  std::vector<double> observed(kBins, 0.0);
  Rng rng(7);
  for (int i = 0; i < kSamples; ++i) {
    const double cdf = boost::math::cdf(law, noise::sample_run_disorder(m, rng).electron_detuning);
    observed[std::min(kBins - 1, static_cast<int>(cdf * kBins))] += 1.0;
  }
  const std::vector<double> expected(kBins, static_cast<double>(kSamples) / kBins);
  EXPECT_GT(testing::chi_square_pvalue(observed, expected), 0.01);
}

TEST(Disorder, ValidateRejectsOutOfRange) {
  NoiseModel m;
  m.gate_angle_max = 4.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = NoiseModel{};
  m.tau = 0.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = NoiseModel{};
  m.bath_mode = BathMode::Explicit;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(Dephase, ZeroDetuningIsIdentity) {
  Rng rng(8);
  const StateVector s = testing::random_state({kE, kN}, rng);
  const StateVector out = noise::dephase_interval(s, {}, NoiseModel{});
  EXPECT_NEAR(std::abs(out.inner(s)), 1.0, 1e-15);
}

TEST(Dephase, NuclearPhaseIsZRotation) {
  NoiseModel m;
  m.hahn_echo = true;
  const noise::RunDisorder d{0.3 / m.tau, 5.0 / m.tau};
  const StateVector plus({kE, kN}, {std::sqrt(0.5), std::sqrt(0.5), 0.0, 0.0});
  const StateVector out = noise::dephase_interval(plus, d, m);
  // Relative phase between |-1>_n and |+1>_n equals delta_n tau.
  EXPECT_NEAR(std::arg(out.amplitude(1) / out.amplitude(0)), 0.3, 1e-12);
  EXPECT_NEAR(out.norm(), 1.0, 1e-12);
}

TEST(Dephase, EchoRemovesElectronAndCrossPhase) {
  NoiseModel m;
  m.hyperfine_coupling = 2e5;
  const noise::RunDisorder d{0.0, 0.7 / m.tau};
  Rng rng(9);
  const StateVector s = testing::random_state({kE, kN}, rng);
  m.hahn_echo = true;
  EXPECT_NEAR(overlap_probability(noise::dephase_interval(s, d, m), s), 1.0, 1e-12);
  m.hahn_echo = false;
  const StateVector expected =
      apply_gate(apply_gate(s, gates::rz(0.7), kE), gates::zz_rotation(2e5 * m.tau), kE, kN);
  EXPECT_NEAR(std::abs(noise::dephase_interval(s, d, m).inner(expected)), 1.0, 1e-12);
}

TEST(NoisyGate, ZeroErrorIsExact) {
  for (GateKind g : {GateKind::HadamardE, GateKind::ControlledXEN, GateKind::ControlledYEN, GateKind::PhaseE}) {
    EXPECT_LT((noise::gate_with_angle_error(g, 0.0) - gates::ideal(g)).cwiseAbs().maxCoeff(), 1e-12) << to_string(g);
  }
  NoiseModel m;
  Rng rng(10);
  EXPECT_LT((noise::noisy_gate(GateKind::HadamardE, m, rng) - gates::hadamard()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(NoisyGate, HadamardOverlapIsCosSquaredHalfAngle) {
  const MatrixX h = noise::gate_with_angle_error(GateKind::HadamardE, kTenDeg);
  const Vector2 up(1.0, 0.0);
  const Vector2 ideal = gates::hadamard() * up;
  const Vector2 noisy = h * up;
  const double overlap = std::norm(ideal.dot(noisy));
  EXPECT_NEAR(overlap, std::pow(std::cos(kTenDeg / 2), 2), 1e-12);
  EXPECT_NEAR(overlap, 0.99240, 5e-6);
}

TEST(NoisyGate, AlwaysUnitary) {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const double eps = rng.uniform(-std::numbers::pi, std::numbers::pi);
    for (GateKind g : {GateKind::HadamardE, GateKind::ControlledXEN, GateKind::ControlledYEN}) {
      const MatrixX u = noise::gate_with_angle_error(g, eps);
      EXPECT_LT((u.adjoint() * u - MatrixX::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(NoisyGate, ErrorStaysWithinBound) {
  NoiseModel m;
  m.gate_angle_max = kTenDeg;
  Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    // CX with error eps acts on |1>_e|0>_n as cos(eps/2)|11> - i sin(eps/2)|10> up to phase.
    const MatrixX u = noise::noisy_gate(GateKind::ControlledXEN, m, rng);
    const double flip = std::abs(u(3, 2));
    EXPECT_GE(flip, std::cos(kTenDeg / 2) - 1e-12);
  }
}

}  // namespace
}  // namespace nvphoton
