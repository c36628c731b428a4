#ifndef NVPHOTON_SUBSYSTEM_HPP
#define NVPHOTON_SUBSYSTEM_HPP

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nvphoton {

enum class SubsystemKind { Electron, Nuclear, Photon };

/// A two-level subsystem of the register. Spins carry index 0; photons are
/// numbered by emission order starting at 1.
struct SubsystemLabel {
  SubsystemKind kind = SubsystemKind::Electron;
  unsigned index = 0;

  static constexpr SubsystemLabel electron() { return {SubsystemKind::Electron, 0}; }
  static constexpr SubsystemLabel nuclear() { return {SubsystemKind::Nuclear, 0}; }
  static constexpr SubsystemLabel photon(unsigned i) { return {SubsystemKind::Photon, i}; }

  friend constexpr auto operator<=>(const SubsystemLabel&, const SubsystemLabel&) = default;

  /// "e", "n", "p3".
  std::string name() const;
};

using Layout = std::vector<SubsystemLabel>;

/// Checks the layout invariants: at most one electron and one nuclear label,
/// photon indices unique and forming 1..k. Throws std::invalid_argument.
void validate_layout(std::span<const SubsystemLabel> layout);

/// Photons 1..count in order.
Layout photon_layout(unsigned count);

}  // namespace nvphoton

#endif  // NVPHOTON_SUBSYSTEM_HPP
