#ifndef NVPHOTON_TARGETS_HPP
#define NVPHOTON_TARGETS_HPP

#include "nvphoton/state_vector.hpp"

namespace nvphoton {

/// (|0...0> + |1...1>)/sqrt2 on photons 1..m. Throws std::invalid_argument for m < 2.
StateVector ideal_ghz(unsigned m);

/// Linear cluster from the ordered product
///   branch 0: prod_a (|0>_a Z_{a+1} + |1>_a)
///   branch 1: prod_a (|0>_a + |1>_a Z_{a+1})
/// normalized, i.e. amplitudes prod_a (-1)^{(1-s_a) s_{a+1}} and
/// prod_a (-1)^{s_a s_{a+1}}. Branch 1 is the standard graph state; branch 0
/// equals Z_2...Z_m applied to it. Throws std::invalid_argument for m < 2 or
/// branch outside {0, 1}.
StateVector ideal_cluster(unsigned m, int branch);

/// (|0> + |1>)/sqrt2 on a single photon.
StateVector single_photon_plus();

}  // namespace nvphoton

#endif  // NVPHOTON_TARGETS_HPP
