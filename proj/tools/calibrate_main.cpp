#include <fstream>
#include <iostream>

#include "nvphoton/calibration.hpp"

int main(int argc, char** argv) {
  const nvphoton::CalibrationResult ghz = nvphoton::calibrate_sequence(nvphoton::ProtocolKind::Ghz);
  const nvphoton::CalibrationResult cluster = nvphoton::calibrate_sequence(nvphoton::ProtocolKind::Cluster);
  const std::string header = nvphoton::generate_constants_header(ghz, cluster);
  if (argc > 1) {
    std::ofstream(argv[1]) << header;
  } else {
    std::cout << header;
  }
  return 0;
}
