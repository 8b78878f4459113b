#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rispace {

enum class ErrorCode {
  InvalidArgument,
  DomainMismatch,
  UnsupportedDomain,
  GridOverflow,
  NotConverged,
  TrivialSpace,
  TruncationDominant,
  NonMonotoneInverse,
  Unsupported,
  ExponentMismatch,
  RepresentationFailed,
  EndpointCertificateFailed,
  DegreeOverflow,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace rispace
