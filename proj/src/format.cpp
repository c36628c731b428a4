#include "nvphoton/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace nvphoton {

std::string format_real(double value) {
  if (value == 0.0) {
    // Normalize -0 so that golden files do not depend on sign of zero.
    value = 0.0;
  }
  std::array<char, 64> buf{};
  // std::to_chars is locale independent.
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string format_short(double value) {
  if (value == 0.0) {
    value = 0.0;
  }
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

}  // namespace nvphoton
