#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geolink {

enum class ErrorKind {
  invalid_word,
  unsupported_surface,
  invalid_surface,
  inadmissible_word,
  same_orbit,
  calibration,
  model_inconsistency,
  ambiguity,
  not_hyperbolic,
  invalid_matrix,
  out_of_range,
  io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_word: return "invalid-word";
    case ErrorKind::unsupported_surface: return "unsupported-surface";
    case ErrorKind::invalid_surface: return "invalid-surface";
    case ErrorKind::inadmissible_word: return "inadmissible-word";
    case ErrorKind::same_orbit: return "same-orbit";
    case ErrorKind::calibration: return "calibration";
    case ErrorKind::model_inconsistency: return "model-inconsistency";
    case ErrorKind::ambiguity: return "ambiguity";
    case ErrorKind::not_hyperbolic: return "not-hyperbolic";
    case ErrorKind::invalid_matrix: return "invalid-matrix";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Invalid user input, as opposed to a failed computation.
  bool is_input_error() const noexcept {
    switch (kind_) {
      case ErrorKind::invalid_word:
      case ErrorKind::unsupported_surface:
      case ErrorKind::invalid_surface:
      case ErrorKind::inadmissible_word:
      case ErrorKind::same_orbit:
      case ErrorKind::not_hyperbolic:
      case ErrorKind::invalid_matrix:
      case ErrorKind::out_of_range:
      case ErrorKind::io:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace geolink
