// Runs the template parameter search and writes the constants file.
// Exits 1 unless exactly one parameter set reproduces the fixture.

#include <fstream>
#include <iostream>
#include <string>

#include "geolink/calibration.hpp"

int main(int argc, char** argv) {
  using namespace geolink;
  try {
    const CalibrationSearch search = search_calibration();
    std::cerr << "candidates tried: " << search.candidates_tried
              << ", solutions: " << search.solutions.size() << '\n';
    if (argc > 1) {
      std::ofstream out(argv[1]);
      if (!out) {
        std::cerr << "cannot write " << argv[1] << '\n';
        return 2;
      }
      write_calibration(out, search);
    } else {
      write_calibration(std::cout, search);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
