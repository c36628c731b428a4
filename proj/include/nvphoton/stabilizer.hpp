#ifndef NVPHOTON_STABILIZER_HPP
#define NVPHOTON_STABILIZER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "nvphoton/state_vector.hpp"

namespace nvphoton {

/// Tensor product of single-photon Paulis, one letter per photon in emission
/// order ("XZI" = X on photon 1, Z on photon 2). No phase is carried.
class PauliString {
 public:
  PauliString() = default;
  /// Letters from {I, X, Y, Z}; throws std::invalid_argument otherwise.
  explicit PauliString(std::string_view letters);
  static PauliString identity(std::size_t size);

  std::size_t size() const { return letters_.size(); }
  char at(std::size_t i) const { return letters_.at(i); }
  void set(std::size_t i, char letter);
  const std::string& str() const { return letters_; }
  bool is_identity() const;

  /// Letter-wise product with phases dropped.
  PauliString operator*(const PauliString& other) const;
  bool commutes_with(const PauliString& other) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::string letters_;
};

/// Applies the string to photons 1..size of `state` (other subsystems untouched).
StateVector apply_pauli_string(const StateVector& state, const PauliString& pauli);

/// <psi|S_i|psi> for each generator. Every generator must have one letter per
/// photon in the layout; throws std::invalid_argument otherwise.
std::vector<double> stabilizer_expectations(const StateVector& state, const std::vector<PauliString>& generators);

/// {X...X, Z1 Z2, Z2 Z3, ...}; for m = 1 just {X}.
std::vector<PauliString> ghz_generators(std::size_t m);

/// Linear-graph generators Z_{a-1} X_a Z_{a+1}, a = 1..m.
std::vector<PauliString> cluster_generators(std::size_t m);

}  // namespace nvphoton

#endif  // NVPHOTON_STABILIZER_HPP
