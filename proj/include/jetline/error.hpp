#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace jetline {

/// Base of every domain error raised by the library.  `name()` is the stable
/// identifier printed by the CLI; `witness()` carries the offending data.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message, std::string witness = {})
      : std::runtime_error(message), name_(std::move(name)), witness_(std::move(witness)) {}

  const std::string& name() const noexcept { return name_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string name_;
  std::string witness_;
};

#define JETLINE_DEFINE_ERROR(Type)                                           \
  class Type : public Error {                                                \
   public:                                                                   \
    explicit Type(const std::string& message, std::string witness = {})      \
        : Error(#Type, message, std::move(witness)) {}                       \
  }

JETLINE_DEFINE_ERROR(PrimalityError);
JETLINE_DEFINE_ERROR(MixedContext);
JETLINE_DEFINE_ERROR(DivisionByZero);
JETLINE_DEFINE_ERROR(NotAUnit);
JETLINE_DEFINE_ERROR(DimensionMismatch);
JETLINE_DEFINE_ERROR(NonInvertibleLeftAction);
JETLINE_DEFINE_ERROR(NotLeibniz);
JETLINE_DEFINE_ERROR(NotLinear);
JETLINE_DEFINE_ERROR(InconsistentIncrements);
JETLINE_DEFINE_ERROR(StabilizationFailure);
JETLINE_DEFINE_ERROR(BadParameter);
JETLINE_DEFINE_ERROR(RankMismatch);
JETLINE_DEFINE_ERROR(NotIdempotent);

#undef JETLINE_DEFINE_ERROR

/// Parse failure with a 1-based position and the set of tokens that would
/// have been accepted there.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column, std::string expected)
      : Error("ParseError",
              message + " at line " + std::to_string(line) + ", column " + std::to_string(column) +
                  (expected.empty() ? std::string{} : "; expected " + expected),
              expected),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace jetline
