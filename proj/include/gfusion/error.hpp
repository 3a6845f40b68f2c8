#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gfusion {

enum class ErrorKind {
  NotHermitian,
  NotPSD,
  RangeNotContained,
  ZeroDenominator,
  DimensionMismatch,
  NotPositive,
  NotInvertible,
  HypothesisFailed,
  ItemCountMismatch,
  WeightMismatch,
  SubspaceMismatch,
  CodomainMismatch,
  NotAFrame,
  ResolutionFailed,
  NotBessel,
  InvalidParameters,
  InvalidValue,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Item index for per-item failures such as NotPositive(j).
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace gfusion
