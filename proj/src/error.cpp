#include "casimir/error.hpp"

namespace casimir {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonTimelike: return "NonTimelike";
    case ErrorCode::NegativeTimeComponent: return "NegativeTimeComponent";
    case ErrorCode::SigmaTooLarge: return "SigmaTooLarge";
    case ErrorCode::NegativeSigma: return "NegativeSigma";
    case ErrorCode::BadDirection: return "BadDirection";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::TailTooFat: return "TailTooFat";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace casimir
