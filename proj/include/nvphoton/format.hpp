#ifndef NVPHOTON_FORMAT_HPP
#define NVPHOTON_FORMAT_HPP

#include <string>

namespace nvphoton {

/// 17 significant digits in %g style with '.' as the decimal separator,
/// independent of the process locale.
std::string format_real(double value);

/// Shortest text that reads back to `value`; for human-readable reports.
std::string format_short(double value);

}  // namespace nvphoton

#endif  // NVPHOTON_FORMAT_HPP
