#include "nvphoton/kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace nvphoton::kernels {

namespace {

// Insert a zero bit at `bit` (a power of two) into k.
inline std::size_t insert_zero(std::size_t k, std::size_t bit) {
  const std::size_t low = k & (bit - 1);
  return ((k ^ low) << 1) | low;
}

struct TargetBits {
  std::vector<std::size_t> bits;    // per target, in operator order
  std::vector<std::size_t> sorted;  // ascending, for zero insertion
  std::vector<std::size_t> offsets; // sub-index -> amplitude offset
};

TargetBits target_bits(std::size_t num_qubits, std::span<const std::size_t> positions) {
  TargetBits t;
  for (std::size_t p : positions) {
    t.bits.push_back(bit_of(num_qubits, p));
  }
  t.sorted = t.bits;
  std::sort(t.sorted.begin(), t.sorted.end());
  const std::size_t k = positions.size();
  t.offsets.assign(std::size_t{1} << k, 0);
  for (std::size_t j = 0; j < t.offsets.size(); ++j) {
    std::size_t off = 0;
    for (std::size_t q = 0; q < k; ++q) {
      if ((j >> (k - 1 - q)) & 1U) {
        off |= t.bits[q];
      }
    }
    t.offsets[j] = off;
  }
  return t;
}

inline std::size_t base_index(std::size_t k, const std::vector<std::size_t>& sorted_bits) {
  for (std::size_t b : sorted_bits) {
    k = insert_zero(k, b);
  }
  return k;
}

inline void apply_1q_at(Complex* a, std::size_t i0, std::size_t bit, const Matrix2& u) {
  const Complex x0 = a[i0];
  const Complex x1 = a[i0 | bit];
  a[i0] = u(0, 0) * x0 + u(0, 1) * x1;
  a[i0 | bit] = u(1, 0) * x0 + u(1, 1) * x1;
}

inline void apply_2q_at(Complex* a, std::size_t i00, std::size_t ba, std::size_t bb, const Matrix4& u) {
  const std::size_t idx[4] = {i00, i00 | bb, i00 | ba, i00 | ba | bb};
  Complex x[4];
  for (int r = 0; r < 4; ++r) {
    x[r] = a[idx[r]];
  }
  for (int r = 0; r < 4; ++r) {
    a[idx[r]] = u(r, 0) * x[0] + u(r, 1) * x[1] + u(r, 2) * x[2] + u(r, 3) * x[3];
  }
}

inline void apply_kq_at(Complex* a, std::size_t base, const TargetBits& t, const MatrixX& op,
                        std::vector<Complex>& scratch) {
  const std::size_t d = t.offsets.size();
  for (std::size_t j = 0; j < d; ++j) {
    scratch[j] = a[base | t.offsets[j]];
  }
  for (std::size_t r = 0; r < d; ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * scratch[c];
    }
    a[base | t.offsets[r]] = acc;
  }
}

}  // namespace

namespace serial {

void apply_1q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos, const Matrix2& u) {
  const std::size_t bit = bit_of(num_qubits, pos);
  const std::size_t half = amps.size() / 2;
  for (std::size_t k = 0; k < half; ++k) {
    apply_1q_at(amps.data(), insert_zero(k, bit), bit, u);
  }
}

void apply_2q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos_a, std::size_t pos_b,
              const Matrix4& u) {
  const std::size_t ba = bit_of(num_qubits, pos_a);
  const std::size_t bb = bit_of(num_qubits, pos_b);
  const std::size_t lo = std::min(ba, bb);
  const std::size_t hi = std::max(ba, bb);
  const std::size_t quarter = amps.size() / 4;
  for (std::size_t k = 0; k < quarter; ++k) {
    apply_2q_at(amps.data(), insert_zero(insert_zero(k, lo), hi), ba, bb, u);
  }
}

void apply_kq(std::span<Complex> amps, std::size_t num_qubits, std::span<const std::size_t> positions,
              const MatrixX& op) {
  const TargetBits t = target_bits(num_qubits, positions);
  std::vector<Complex> scratch(t.offsets.size());
  const std::size_t blocks = amps.size() >> positions.size();
  for (std::size_t k = 0; k < blocks; ++k) {
    apply_kq_at(amps.data(), base_index(k, t.sorted), t, op, scratch);
  }
}

double norm_squared(std::span<const Complex> amps) {
  double s = 0.0;
  for (const Complex& z : amps) {
    s += std::norm(z);
  }
  return s;
}

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < bra.size(); ++i) {
    s += std::conj(bra[i]) * ket[i];
  }
  return s;
}

}  // namespace serial

namespace omp {

void apply_1q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos, const Matrix2& u) {
  const std::size_t bit = bit_of(num_qubits, pos);
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
  Complex* a = amps.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < half; ++k) {
    apply_1q_at(a, insert_zero(static_cast<std::size_t>(k), bit), bit, u);
  }
}

void apply_2q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos_a, std::size_t pos_b,
              const Matrix4& u) {
  const std::size_t ba = bit_of(num_qubits, pos_a);
  const std::size_t bb = bit_of(num_qubits, pos_b);
  const std::size_t lo = std::min(ba, bb);
  const std::size_t hi = std::max(ba, bb);
  const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
  Complex* a = amps.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < quarter; ++k) {
    apply_2q_at(a, insert_zero(insert_zero(static_cast<std::size_t>(k), lo), hi), ba, bb, u);
  }
}

void apply_kq(std::span<Complex> amps, std::size_t num_qubits, std::span<const std::size_t> positions,
              const MatrixX& op) {
  const TargetBits t = target_bits(num_qubits, positions);
  const auto blocks = static_cast<std::int64_t>(amps.size() >> positions.size());
  Complex* a = amps.data();
#pragma omp parallel
  {
    std::vector<Complex> scratch(t.offsets.size());
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < blocks; ++k) {
      apply_kq_at(a, base_index(static_cast<std::size_t>(k), t.sorted), t, op, scratch);
    }
  }
}

double norm_squared(std::span<const Complex> amps) {
  double s = 0.0;
  const auto n = static_cast<std::int64_t>(amps.size());
  const Complex* a = amps.data();
#pragma omp parallel for reduction(+ : s) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    s += std::norm(a[i]);
  }
  return s;
}

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
  double re = 0.0;
  double im = 0.0;
  const auto n = static_cast<std::int64_t>(bra.size());
  const Complex* x = bra.data();
  const Complex* y = ket.data();
#pragma omp parallel for reduction(+ : re, im) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const Complex z = std::conj(x[i]) * y[i];
    re += z.real();
    im += z.imag();
  }
  return {re, im};
}

}  // namespace omp

void apply_1q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos, const Matrix2& u) {
  if (amps.size() >= kParallelMinDim) {
    omp::apply_1q(amps, num_qubits, pos, u);
  } else {
    serial::apply_1q(amps, num_qubits, pos, u);
  }
}

void apply_2q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos_a, std::size_t pos_b,
              const Matrix4& u) {
  if (amps.size() >= kParallelMinDim) {
    omp::apply_2q(amps, num_qubits, pos_a, pos_b, u);
  } else {
    serial::apply_2q(amps, num_qubits, pos_a, pos_b, u);
  }
}

void apply_kq(std::span<Complex> amps, std::size_t num_qubits, std::span<const std::size_t> positions,
              const MatrixX& op) {
  if (amps.size() >= kParallelMinDim) {
    omp::apply_kq(amps, num_qubits, positions, op);
  } else {
    serial::apply_kq(amps, num_qubits, positions, op);
  }
}

double norm_squared(std::span<const Complex> amps) {
  return amps.size() >= kParallelMinDim ? omp::norm_squared(amps) : serial::norm_squared(amps);
}

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
  return bra.size() >= kParallelMinDim ? omp::inner(bra, ket) : serial::inner(bra, ket);
}

}  // namespace nvphoton::kernels
