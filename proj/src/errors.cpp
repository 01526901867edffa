#include "forge/errors.hpp"

namespace forge {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::Infeasible: return "Infeasible";
    case Errc::NotFound: return "NotFound";
    case Errc::InvalidFamily: return "InvalidFamily";
    case Errc::SupplierFailure: return "SupplierFailure";
    case Errc::IngredientMissing: return "IngredientMissing";
    case Errc::IngredientInvalid: return "IngredientInvalid";
    case Errc::NotDisjoint: return "NotDisjoint";
    case Errc::NotTransversal: return "NotTransversal";
    case Errc::TooManyTargets: return "TooManyTargets";
    case Errc::AlphaUnavailable: return "AlphaUnavailable";
    case Errc::SizeLimitExceeded: return "SizeLimitExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaError: return "SchemaError";
  }
  return "UnknownError";
}

}  // namespace forge
