#pragma once

#include <stdexcept>
#include <string>

namespace whittaker {

// Base of every error raised by the library. kind() is the stable
// machine-readable name used by the CLI's {error, detail} documents.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(detail), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define WHITTAKER_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& detail) : Error(#Name, detail) {}    \
  };

// Numerical failures (CLI exit 3).
WHITTAKER_DEFINE_ERROR(PoleError)
WHITTAKER_DEFINE_ERROR(PoleOnContour)
WHITTAKER_DEFINE_ERROR(InfeasibleContour)
WHITTAKER_DEFINE_ERROR(Unconverged)

// Invalid input (CLI exit 2).
WHITTAKER_DEFINE_ERROR(DomainError)
WHITTAKER_DEFINE_ERROR(LengthMismatch)
WHITTAKER_DEFINE_ERROR(RepeatedParameter)
WHITTAKER_DEFINE_ERROR(UnsupportedRank)
WHITTAKER_DEFINE_ERROR(InvalidArgument)

#undef WHITTAKER_DEFINE_ERROR

inline bool is_numeric_failure(const Error& e) {
  const auto& k = e.kind();
  return k == "PoleError" || k == "PoleOnContour" || k == "InfeasibleContour" ||
         k == "Unconverged";
}

}  // namespace whittaker
