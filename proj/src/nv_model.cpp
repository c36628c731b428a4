#include "nvphoton/nv_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nvphoton/kernels.hpp"

namespace nvphoton::nv {

namespace {
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kFactorTol = 1e-10;
}  // namespace

Vector2 bright() { return Vector2(kInvSqrt2, kInvSqrt2); }
Vector2 dark() { return Vector2(kInvSqrt2, -kInvSqrt2); }
Vector2 spin_up() { return Vector2(1.0, 0.0); }
Vector2 spin_down() { return Vector2(0.0, 1.0); }
Vector2 sigma_minus() { return Vector2(1.0, 0.0); }
Vector2 sigma_plus() { return Vector2(0.0, 1.0); }

VectorX emitted_bell_pair() {
  VectorX v = VectorX::Zero(4);
  v(0) = kInvSqrt2;  // |+1>_e |s->
  v(3) = kInvSqrt2;  // |-1>_e |s+>
  return v;
}

StateVector prepare_initial(int nuclear_init) {
  if (nuclear_init != 0 && nuclear_init != 1) {
    throw std::invalid_argument("nuclear_init must be 0 or 1");
  }
  const Vector2 factors[2] = {bright(), nuclear_init == 0 ? spin_up() : spin_down()};
  return make_product_state({SubsystemLabel::electron(), SubsystemLabel::nuclear()}, factors);
}

namespace {

// Bright-component weight and, when requested, the normalized collapse onto
// |b>_e, computed pairwise over the electron bit.
double bright_weight(const StateVector& state, std::vector<Complex>* collapsed) {
  const std::size_t nq = state.num_subsystems();
  const std::size_t bit = kernels::bit_of(nq, state.position(SubsystemLabel::electron()));
  const auto amps = state.amplitudes();
  double p = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & bit) == 0) {
      p += std::norm((amps[i] + amps[i | bit]) * kInvSqrt2);
    }
  }
  if (collapsed && p >= kForbiddenBranch) {
    collapsed->assign(amps.size(), Complex{0.0, 0.0});
    const double scale = 0.5 / std::sqrt(p);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if ((i & bit) == 0) {
        const Complex c = (amps[i] + amps[i | bit]) * scale;
        (*collapsed)[i] = c;
        (*collapsed)[i | bit] = c;
      }
    }
  }
  return p;
}

}  // namespace

double bright_probability(const StateVector& state) { return bright_weight(state, nullptr); }

CycleResult bright_dark_filter(const StateVector& state, Rng& rng) {
  std::vector<Complex> collapsed;
  const double p = bright_weight(state, &collapsed);
  const double u = rng.uniform();
  if (p < kForbiddenBranch || !(u < p)) {
    return {CycleStatus::Shelved, std::nullopt, 1.0 - p};
  }
  return {CycleStatus::Bright, StateVector(state.layout(), std::move(collapsed)), p};
}

CycleResult bright_branch(const StateVector& state) {
  const SubsystemLabel e[1] = {SubsystemLabel::electron()};
  const Vector2 b = bright();
  Projection p = project(state, MatrixX(b * b.adjoint()), e);
  if (!p.collapsed) {
    throw InvariantError("bright branch is forbidden for this state");
  }
  return {CycleStatus::Bright, std::move(p.collapsed), p.probability};
}

StateVector absorb_emit(const StateVector& state, unsigned new_photon_index) {
  const SubsystemLabel photon = SubsystemLabel::photon(new_photon_index);
  if (state.contains(photon)) {
    throw std::invalid_argument("photon " + photon.name() + " already emitted");
  }
  const std::size_t bit = kernels::bit_of(state.num_subsystems(), state.position(SubsystemLabel::electron()));
  const auto in = state.amplitudes();
  // Output layout: input layout with the new photon appended as the lowest
  // bit; the photon copies the electron bit. With rest = <b|_e psi,
  // amplitude(e = s, rest = r, photon = s) = rest(r)/sqrt2.
  std::vector<Complex> amps(in.size() * 2, Complex{0.0, 0.0});
  double weight = 0.0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if ((i & bit) == 0) {
      const Complex rest = (in[i] + in[i | bit]) * kInvSqrt2;
      weight += std::norm(rest);
      amps[i << 1] = rest * kInvSqrt2;
      amps[((i | bit) << 1) | 1U] = rest * kInvSqrt2;
    }
  }
  if (std::abs(weight - 1.0) > kFactorTol) {
    throw InvariantError("absorb_emit requires the electron to be exactly bright (overlap " +
                         std::to_string(weight) + ")");
  }
  Layout layout = state.layout();
  layout.push_back(photon);
  return StateVector(std::move(layout), std::move(amps));
}

StateVector reexcite_without_cnot(const StateVector& state, unsigned new_photon_index) {
  const CycleResult bright_part = bright_branch(state);
  return absorb_emit(*bright_part.state, new_photon_index);
}

}  // namespace nvphoton::nv
