#include "nvphoton/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nvphoton/format.hpp"
#include "nvphoton/kernels.hpp"

namespace nvphoton {

namespace {

bool is_unitary(const MatrixX& u) {
  const auto n = u.rows();
  return (u.adjoint() * u - MatrixX::Identity(n, n)).cwiseAbs().maxCoeff() <= kMatrixTol;
}

// Splits each register index into (partition index, rest index), both
// big-endian in their own layout order.
struct Bipartition {
  std::vector<std::size_t> row_of;
  std::vector<std::size_t> col_of;
  std::size_t rows = 1;
  std::size_t cols = 1;
};

Bipartition split(const StateVector& state, std::span<const SubsystemLabel> partition) {
  const std::size_t n = state.num_subsystems();
  std::vector<bool> in_part(n, false);
  for (const SubsystemLabel& l : partition) {
    const std::size_t p = state.position(l);
    if (in_part[p]) {
      throw std::invalid_argument("duplicate label in partition");
    }
    in_part[p] = true;
  }
  std::vector<std::size_t> part_pos;
  for (const SubsystemLabel& l : partition) {
    part_pos.push_back(state.position(l));
  }
  std::vector<std::size_t> rest_pos;
  for (std::size_t p = 0; p < n; ++p) {
    if (!in_part[p]) {
      rest_pos.push_back(p);
    }
  }
  Bipartition b;
  b.rows = std::size_t{1} << part_pos.size();
  b.cols = std::size_t{1} << rest_pos.size();
  b.row_of.resize(state.dimension());
  b.col_of.resize(state.dimension());
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    std::size_t r = 0;
    for (std::size_t p : part_pos) {
      r = (r << 1) | ((i >> (n - 1 - p)) & 1U);
    }
    std::size_t c = 0;
    for (std::size_t p : rest_pos) {
      c = (c << 1) | ((i >> (n - 1 - p)) & 1U);
    }
    b.row_of[i] = r;
    b.col_of[i] = c;
  }
  return b;
}

Layout without(const Layout& layout, std::span<const SubsystemLabel> drop) {
  Layout out;
  for (const SubsystemLabel& l : layout) {
    if (std::find(drop.begin(), drop.end(), l) == drop.end()) {
      out.push_back(l);
    }
  }
  return out;
}

}  // namespace

StateVector::StateVector(Layout layout, std::vector<Complex> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  validate_layout(layout_);
  if (layout_.size() >= 8 * sizeof(std::size_t) - 1) {
    throw std::invalid_argument("register too large");
  }
  if (amplitudes_.size() != (std::size_t{1} << layout_.size())) {
    throw std::invalid_argument("amplitude count must be 2^(layout size)");
  }
}

bool StateVector::contains(SubsystemLabel label) const {
  return std::find(layout_.begin(), layout_.end(), label) != layout_.end();
}

std::size_t StateVector::position(SubsystemLabel label) const {
  const auto it = std::find(layout_.begin(), layout_.end(), label);
  if (it == layout_.end()) {
    throw std::invalid_argument("subsystem " + label.name() + " not in layout");
  }
  return static_cast<std::size_t>(it - layout_.begin());
}

double StateVector::norm() const { return std::sqrt(kernels::norm_squared(amplitudes_)); }

Complex StateVector::inner(const StateVector& other) const {
  if (other.layout_ != layout_) {
    throw std::invalid_argument("inner product of states with different layouts");
  }
  return kernels::inner(amplitudes_, other.amplitudes_);
}

VectorX StateVector::to_eigen() const {
  return Eigen::Map<const VectorX>(amplitudes_.data(), static_cast<Eigen::Index>(amplitudes_.size()));
}

void StateVector::normalize() {
  const double nrm = norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw InvariantError("cannot normalize a zero state");
  }
  for (Complex& z : amplitudes_) {
    z /= nrm;
  }
}

std::string basis_label(std::span<const SubsystemLabel> layout, std::size_t index) {
  const std::size_t n = layout.size();
  std::string out;
  for (std::size_t p = 0; p < n; ++p) {
    const bool bit = (index >> (n - 1 - p)) & 1U;
    if (p > 0) {
      out += ' ';
    }
    out += layout[p].name();
    out += ':';
    if (layout[p].kind == SubsystemKind::Photon) {
      out += bit ? "s+" : "s-";
    } else {
      out += bit ? "-1" : "+1";
    }
  }
  return out;
}

std::string StateVector::dump() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    os << i << ' ' << basis_label(layout_, i) << ' ' << format_real(amplitudes_[i].real()) << ' '
       << format_real(amplitudes_[i].imag()) << '\n';
  }
  return os.str();
}

StateVector make_basis_state(Layout layout, std::size_t basis_index) {
  const std::size_t dim = std::size_t{1} << layout.size();
  if (basis_index >= dim) {
    throw std::out_of_range("basis index out of range");
  }
  std::vector<Complex> amps(dim, 0.0);
  amps[basis_index] = 1.0;
  return StateVector(std::move(layout), std::move(amps));
}

StateVector make_product_state(Layout layout, std::span<const Vector2> factors) {
  if (factors.size() != layout.size()) {
    throw std::invalid_argument("one factor per subsystem required");
  }
  std::vector<Complex> amps{1.0};
  for (const Vector2& f : factors) {
    std::vector<Complex> next(amps.size() * 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * f(0);
      next[2 * i + 1] = amps[i] * f(1);
    }
    amps = std::move(next);
  }
  return StateVector(std::move(layout), std::move(amps));
}

StateVector apply_gate(const StateVector& state, const MatrixX& gate, std::span<const SubsystemLabel> targets) {
  if (targets.size() != 1 && targets.size() != 2) {
    throw std::invalid_argument("apply_gate takes one or two targets");
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << targets.size());
  if (gate.rows() != dim || gate.cols() != dim) {
    throw std::invalid_argument("gate size does not match target count");
  }
  if (!is_unitary(gate)) {
    throw std::invalid_argument("gate is not unitary");
  }
  if (targets.size() == 2 && targets[0] == targets[1]) {
    throw std::invalid_argument("two-qubit gate targets must differ");
  }
  StateVector out = state;
  if (targets.size() == 1) {
    kernels::apply_1q(out.mutable_amplitudes(), out.num_subsystems(), out.position(targets[0]), Matrix2(gate));
  } else {
    kernels::apply_2q(out.mutable_amplitudes(), out.num_subsystems(), out.position(targets[0]),
                      out.position(targets[1]), Matrix4(gate));
  }
  return out;
}

StateVector apply_gate(const StateVector& state, const Matrix2& gate, SubsystemLabel target) {
  const SubsystemLabel t[1] = {target};
  return apply_gate(state, MatrixX(gate), t);
}

StateVector apply_gate(const StateVector& state, const Matrix4& gate, SubsystemLabel first, SubsystemLabel second) {
  const SubsystemLabel t[2] = {first, second};
  return apply_gate(state, MatrixX(gate), t);
}

void apply_gate_inplace(StateVector& state, const Matrix2& gate, SubsystemLabel target) {
  kernels::apply_1q(state.mutable_amplitudes(), state.num_subsystems(), state.position(target), gate);
}

void apply_gate_inplace(StateVector& state, const Matrix4& gate, SubsystemLabel first, SubsystemLabel second) {
  if (first == second) {
    throw std::invalid_argument("two-qubit gate targets must differ");
  }
  kernels::apply_2q(state.mutable_amplitudes(), state.num_subsystems(), state.position(first),
                    state.position(second), gate);
}

StateVector append_subsystem(const StateVector& state, SubsystemLabel label, const Vector2& sub_state) {
  if (state.contains(label)) {
    throw std::invalid_argument("subsystem " + label.name() + " already in layout");
  }
  if (std::abs(sub_state.norm() - 1.0) > kMatrixTol) {
    throw std::invalid_argument("appended sub-state must be normalized");
  }
  Layout layout = state.layout();
  layout.push_back(label);
  const auto in = state.amplitudes();
  std::vector<Complex> amps(in.size() * 2);
  for (std::size_t i = 0; i < in.size(); ++i) {
    amps[2 * i] = in[i] * sub_state(0);
    amps[2 * i + 1] = in[i] * sub_state(1);
  }
  return StateVector(std::move(layout), std::move(amps));
}

StateVector contract_subsystem(const StateVector& state, SubsystemLabel label, const Vector2& bra) {
  const SubsystemLabel drop[1] = {label};
  const Bipartition b = split(state, drop);
  std::vector<Complex> amps(b.cols, 0.0);
  const auto in = state.amplitudes();
  for (std::size_t i = 0; i < in.size(); ++i) {
    amps[b.col_of[i]] += std::conj(bra(static_cast<Eigen::Index>(b.row_of[i]))) * in[i];
  }
  return StateVector(without(state.layout(), drop), std::move(amps));
}

StateVector contract_pair(const StateVector& state, SubsystemLabel first, SubsystemLabel second, const VectorX& bra) {
  if (bra.size() != 4) {
    throw std::invalid_argument("pair bra must have 4 components");
  }
  const SubsystemLabel drop[2] = {first, second};
  const Bipartition b = split(state, drop);
  std::vector<Complex> amps(b.cols, 0.0);
  const auto in = state.amplitudes();
  for (std::size_t i = 0; i < in.size(); ++i) {
    amps[b.col_of[i]] += std::conj(bra(static_cast<Eigen::Index>(b.row_of[i]))) * in[i];
  }
  return StateVector(without(state.layout(), drop), std::move(amps));
}

Projection project(const StateVector& state, const MatrixX& projector, std::span<const SubsystemLabel> targets) {
  if (targets.empty()) {
    throw std::invalid_argument("projector needs at least one target");
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << targets.size());
  if (projector.rows() != dim || projector.cols() != dim) {
    throw std::invalid_argument("projector size does not match target count");
  }
  if ((projector * projector - projector).cwiseAbs().maxCoeff() > kMatrixTol ||
      (projector.adjoint() - projector).cwiseAbs().maxCoeff() > kMatrixTol) {
    throw std::invalid_argument("operator is not a Hermitian projector");
  }
  std::vector<std::size_t> positions;
  for (const SubsystemLabel& l : targets) {
    positions.push_back(state.position(l));
  }
  StateVector out = state;
  kernels::apply_kq(out.mutable_amplitudes(), out.num_subsystems(), positions, projector);
  Projection result;
  result.probability = kernels::norm_squared(out.amplitudes());
  if (result.probability >= kForbiddenBranch) {
    out.normalize();
    result.collapsed = std::move(out);
  }
  return result;
}

Measurement measure(const StateVector& state, SubsystemLabel target, const Vector2& basis0, const Vector2& basis1,
                    Rng& rng) {
  const Matrix2 g{{basis0(0), basis1(0)}, {basis0(1), basis1(1)}};
  if ((g.adjoint() * g - Matrix2::Identity()).cwiseAbs().maxCoeff() > kMatrixTol) {
    throw std::invalid_argument("measurement basis is not orthonormal");
  }
  const SubsystemLabel t[1] = {target};
  const MatrixX p0 = basis0 * basis0.adjoint();
  Projection first = project(state, p0, t);
  const double u = rng.uniform();
  if (first.collapsed && u < first.probability) {
    return {0, first.probability, std::move(*first.collapsed)};
  }
  const MatrixX p1 = basis1 * basis1.adjoint();
  Projection second = project(state, p1, t);
  if (!second.collapsed) {
    // Only reachable through rounding when outcome 0 had probability ~1.
    return {0, first.probability, std::move(*first.collapsed)};
  }
  return {1, second.probability, std::move(*second.collapsed)};
}

Measurement measure_z(const StateVector& state, SubsystemLabel target, Rng& rng) {
  return measure(state, target, Vector2(1.0, 0.0), Vector2(0.0, 1.0), rng);
}

std::vector<double> schmidt_coefficients(const StateVector& state, std::span<const SubsystemLabel> partition) {
  if (partition.empty()) {
    throw std::invalid_argument("empty partition");
  }
  if (partition.size() >= state.num_subsystems()) {
    throw std::invalid_argument("partition must leave a non-empty complement");
  }
  const Bipartition b = split(state, partition);
  MatrixX m = MatrixX::Zero(static_cast<Eigen::Index>(b.rows), static_cast<Eigen::Index>(b.cols));
  const auto in = state.amplitudes();
  for (std::size_t i = 0; i < in.size(); ++i) {
    m(static_cast<Eigen::Index>(b.row_of[i]), static_cast<Eigen::Index>(b.col_of[i])) = in[i];
  }
  Eigen::BDCSVD<MatrixX> svd(m);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

std::size_t schmidt_rank(const StateVector& state, std::span<const SubsystemLabel> partition, double tol) {
  const std::vector<double> sv = schmidt_coefficients(state, partition);
  return static_cast<std::size_t>(std::count_if(sv.begin(), sv.end(), [tol](double s) { return s > tol; }));
}

double overlap_probability(const StateVector& a, const StateVector& b) { return std::norm(a.inner(b)); }

}  // namespace nvphoton
