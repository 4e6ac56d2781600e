#pragma once

// The committed constants file: template parameters plus the block tables
// derived from them, checked against each other whenever the file is read.

#include <ostream>
#include <sstream>
#include <string>

#include "geolink/birkhoff.hpp"
#include "geolink/template_model.hpp"

namespace geolink {

struct Calibration {
  TemplateModel model;
  std::string source;  // path, or "search" when computed in-process
};

namespace detail {

inline std::string table_prefix(const SurfaceSpec& s) { return "table." + s.str() + "."; }

inline void write_table(std::ostream& out, const FastTable& t) {
  const std::string prefix = table_prefix(t.surface);
  for (const auto& [block, value] : t.block_values) {
    out << prefix << block_name(block, t.surface) << '=' << value.str() << '\n';
  }
  out << prefix << "alternation=" << t.alternation.str() << '\n';
}

inline void check_table(const ConstantsFile& f, const FastTable& t) {
  const std::string prefix = table_prefix(t.surface);
  auto check = [&](const std::string& key, const Rational& derived) {
    const Rational stored = Rational::parse(f.get(key));
    if (stored != derived) {
      throw Error(ErrorKind::calibration, key + " is " + stored.str() +
                                              " in the constants file but the template gives " +
                                              derived.str());
    }
  };
  for (const auto& [block, value] : t.block_values) check(prefix + block_name(block, t.surface), value);
  check(prefix + "alternation", t.alternation);
}

}  // namespace detail

inline void write_calibration(std::ostream& out, const CalibrationSearch& search) {
  if (search.solutions.size() != 1) {
    throw Error(ErrorKind::calibration, "refusing to write constants: the search found " +
                                            std::to_string(search.solutions.size()) + " solutions");
  }
  const TemplateModel& m = search.solutions.front();
  out << "# geolink template calibration constants (key=value)\n"
      << "# written by geolink-calibrate; edits are rejected unless consistent\n";
  write_model_constants(out, m);
  out << "search.max_twist=" << search.max_twist << '\n'
      << "search.candidates=" << search.candidates_tried << '\n'
      << "search.solutions=" << search.solutions.size() << '\n';
  for (const auto& base : {BaseOrbit::h(), BaseOrbit::gamma8()}) {
    detail::write_table(out, derive_fast_table(base, m));
  }
}

inline Calibration parse_calibration(std::istream& in, const std::string& source) {
  const ConstantsFile f = ConstantsFile::parse(in);
  Calibration c{model_from_constants(f), source};
  for (const auto& base : {BaseOrbit::h(), BaseOrbit::gamma8()}) {
    detail::check_table(f, derive_fast_table(base, c.model));
  }
  return c;
}

inline Calibration load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open calibration file '" + path + "'");
  return parse_calibration(in, path);
}

}  // namespace geolink
