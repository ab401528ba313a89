#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subsetspace {

enum class ErrorCode {
  InvalidInput,
  UnsupportedOperation,
  SingularDirection,
  NoMatchingGuarantee,
  SizeLimit,
  NotALambdaRelation,
  UndefinedRatio,
  SingularField,
  IntegrationFailure,
  Domain,
  NoData,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Numerical failures (as opposed to bad input) get their own exit status.
  bool is_numerical() const noexcept {
    return code_ == ErrorCode::SingularField || code_ == ErrorCode::IntegrationFailure;
  }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::UnsupportedOperation: return "unsupported-operation";
    case ErrorCode::SingularDirection: return "singular-direction";
    case ErrorCode::NoMatchingGuarantee: return "no-matching-guarantee";
    case ErrorCode::SizeLimit: return "size-limit";
    case ErrorCode::NotALambdaRelation: return "not-a-lambda-relation";
    case ErrorCode::UndefinedRatio: return "undefined-ratio";
    case ErrorCode::SingularField: return "singular-field";
    case ErrorCode::IntegrationFailure: return "integration-failure";
    case ErrorCode::Domain: return "domain-error";
    case ErrorCode::NoData: return "no-data";
  }
  return "unknown";
}

}  // namespace subsetspace
