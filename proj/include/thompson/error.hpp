#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thompson {

enum class ErrorKind {
  malformed_number,
  out_of_range,
  division_by_zero,
  invalid_marked_set,
  not_standard,
  invalid_element,
  cardinality_mismatch,
  domain_not_contained,
  too_few_points,
  empty_family,
  mesh_too_large,
  tower_too_tall,
  radius_too_large,
  invalid_measure,
  malformed_input,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::malformed_number: return "MalformedNumber";
    case ErrorKind::out_of_range: return "OutOfRange";
    case ErrorKind::division_by_zero: return "DivisionByZero";
    case ErrorKind::invalid_marked_set: return "InvalidMarkedSet";
    case ErrorKind::not_standard: return "NotStandard";
    case ErrorKind::invalid_element: return "InvalidElement";
    case ErrorKind::cardinality_mismatch: return "CardinalityMismatch";
    case ErrorKind::domain_not_contained: return "DomainNotContained";
    case ErrorKind::too_few_points: return "TooFewPoints";
    case ErrorKind::empty_family: return "EmptyFamily";
    case ErrorKind::mesh_too_large: return "MeshTooLarge";
    case ErrorKind::tower_too_tall: return "TowerTooTall";
    case ErrorKind::radius_too_large: return "RadiusTooLarge";
    case ErrorKind::invalid_measure: return "InvalidMeasure";
    case ErrorKind::malformed_input: return "MalformedInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace thompson
