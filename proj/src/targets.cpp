#include "nvphoton/targets.hpp"

#include <cmath>
#include <stdexcept>

namespace nvphoton {

StateVector ideal_ghz(unsigned m) {
  if (m < 2) {
    throw std::invalid_argument("ideal_ghz needs at least 2 photons");
  }
  const std::size_t dim = std::size_t{1} << m;
  std::vector<Complex> amps(dim, Complex{0.0, 0.0});
  amps.front() = 1.0 / std::sqrt(2.0);
  amps.back() = 1.0 / std::sqrt(2.0);
  return StateVector(photon_layout(m), std::move(amps));
}

StateVector ideal_cluster(unsigned m, int branch) {
  if (m < 2) {
    throw std::invalid_argument("ideal_cluster needs at least 2 photons");
  }
  if (branch != 0 && branch != 1) {
    throw std::invalid_argument("cluster branch must be 0 or 1");
  }
  const std::size_t dim = std::size_t{1} << m;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<Complex> amps(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    int parity = 0;
    for (unsigned a = 0; a + 1 < m; ++a) {
      const int s_a = static_cast<int>((idx >> (m - 1 - a)) & 1U);
      const int s_next = static_cast<int>((idx >> (m - 2 - a)) & 1U);
      parity ^= (branch == 0 ? (1 - s_a) : s_a) & s_next;
    }
    amps[idx] = parity ? -scale : scale;
  }
  return StateVector(photon_layout(m), std::move(amps));
}

StateVector single_photon_plus() {
  return StateVector(photon_layout(1), {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
}

}  // namespace nvphoton
