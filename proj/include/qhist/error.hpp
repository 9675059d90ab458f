#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhist {

enum class Errc {
  // ray-core
  ZeroVector,
  NormOutOfTolerance,
  NonFinite,
  DimensionMismatch,
  DimensionOutOfRange,
  NotUnitary,
  DuplicateEvent,
  InvalidName,
  // history-lang
  SyntaxError,
  UnknownToken,
  // evaluation
  UnknownEvent,
  NestedSequenceInSlot,
  NonOrthogonalAlternatives,
  NoAlternatives,
  AlternativeEndpoint,
  ForbiddenHistory,
  IndexOutOfRange,
  InternalConsistency,
  // scenario ingestion
  FileNotFound,
  SchemaError,
  ValidationError,
};

std::string_view errc_name(Errc code);

// Process exit code associated with an error class:
// 2 validation, 3 evaluation, 4 internal consistency.
int exit_code_for(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(Errc code, const std::string& message, std::size_t position)
      : std::runtime_error(message), code_(code), position_(position) {}

  Errc code() const noexcept { return code_; }
  // Byte offset into parsed text, for SyntaxError / UnknownToken.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  Errc code_;
  std::optional<std::size_t> position_;
};

}  // namespace qhist
