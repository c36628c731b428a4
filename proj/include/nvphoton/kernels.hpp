#ifndef NVPHOTON_KERNELS_HPP
#define NVPHOTON_KERNELS_HPP

// Dense amplitude kernels. Each kernel exists twice: a plain serial loop kept
// as the reference implementation, and an OpenMP version used by the library
// once the register is large enough to amortize thread start-up. Tests check
// the two against each other; bench/ times them.
//
// Index convention: register position p (0 = first in the layout) is bit
// (n - 1 - p) of the amplitude index, i.e. big-endian in layout order.

#include <cstddef>
#include <span>
#include <vector>

#include "nvphoton/types.hpp"

namespace nvphoton::kernels {

/// Registers at or above this dimension use the OpenMP kernels.
inline constexpr std::size_t kParallelMinDim = std::size_t{1} << 12;

constexpr std::size_t bit_of(std::size_t num_qubits, std::size_t position) {
  return std::size_t{1} << (num_qubits - 1 - position);
}

namespace serial {
void apply_1q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos, const Matrix2& u);
void apply_2q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos_a, std::size_t pos_b,
              const Matrix4& u);
/// Operator on k targets; op rows/cols are indexed big-endian in `positions` order.
void apply_kq(std::span<Complex> amps, std::size_t num_qubits, std::span<const std::size_t> positions,
              const MatrixX& op);
double norm_squared(std::span<const Complex> amps);
Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);
}  // namespace serial

namespace omp {
void apply_1q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos, const Matrix2& u);
void apply_2q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos_a, std::size_t pos_b,
              const Matrix4& u);
void apply_kq(std::span<Complex> amps, std::size_t num_qubits, std::span<const std::size_t> positions,
              const MatrixX& op);
double norm_squared(std::span<const Complex> amps);
Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);
}  // namespace omp

// Size-dispatched entry points.
void apply_1q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos, const Matrix2& u);
void apply_2q(std::span<Complex> amps, std::size_t num_qubits, std::size_t pos_a, std::size_t pos_b,
              const Matrix4& u);
void apply_kq(std::span<Complex> amps, std::size_t num_qubits, std::span<const std::size_t> positions,
              const MatrixX& op);
double norm_squared(std::span<const Complex> amps);
Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);

}  // namespace nvphoton::kernels

#endif  // NVPHOTON_KERNELS_HPP
