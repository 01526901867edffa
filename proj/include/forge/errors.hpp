#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Every failure mode that is an *error* (as opposed to a verification
// verdict, which is reported through VerificationReport).
enum class Errc {
  NotPrimePower,
  KTooLarge,
  InvalidInput,
  PreconditionViolated,
  Infeasible,
  NotFound,
  InvalidFamily,
  SupplierFailure,
  IngredientMissing,
  IngredientInvalid,
  NotDisjoint,
  NotTransversal,
  TooManyTargets,
  AlphaUnavailable,
  SizeLimitExceeded,
  ParseError,
  SchemaError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, Errc code, const std::string& message) {
  if (!condition) raise(code, message);
}

}  // namespace forge
