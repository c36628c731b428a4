#include "nvphoton/subsystem.hpp"

#include <algorithm>
#include <stdexcept>

namespace nvphoton {

std::string SubsystemLabel::name() const {
  switch (kind) {
    case SubsystemKind::Electron:
      return "e";
    case SubsystemKind::Nuclear:
      return "n";
    case SubsystemKind::Photon:
      return "p" + std::to_string(index);
  }
  return "?";
}

void validate_layout(std::span<const SubsystemLabel> layout) {
  int electrons = 0;
  int nuclei = 0;
  std::vector<unsigned> photons;
  for (const SubsystemLabel& l : layout) {
    switch (l.kind) {
      case SubsystemKind::Electron:
        ++electrons;
        if (l.index != 0) {
          throw std::invalid_argument("electron label must have index 0");
        }
        break;
      case SubsystemKind::Nuclear:
        ++nuclei;
        if (l.index != 0) {
          throw std::invalid_argument("nuclear label must have index 0");
        }
        break;
      case SubsystemKind::Photon:
        photons.push_back(l.index);
        break;
    }
  }
  if (electrons > 1 || nuclei > 1) {
    throw std::invalid_argument("layout holds more than one electron or nuclear label");
  }
  std::sort(photons.begin(), photons.end());
  for (std::size_t i = 0; i < photons.size(); ++i) {
    if (photons[i] != i + 1) {
      throw std::invalid_argument("photon indices must be unique and contiguous from 1");
    }
  }
}

Layout photon_layout(unsigned count) {
  Layout out;
  out.reserve(count);
  for (unsigned i = 1; i <= count; ++i) {
    out.push_back(SubsystemLabel::photon(i));
  }
  return out;
}

}  // namespace nvphoton
