#include "acs/error.hpp"

namespace acs {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CutoffOverflow: return "CutoffOverflow";
    case ErrorCode::PoleAtSouthPole: return "PoleAtSouthPole";
    case ErrorCode::CombinatoricsOverflow: return "CombinatoricsOverflow";
    case ErrorCode::ExponentialNoConvergence: return "ExponentialNoConvergence";
    case ErrorCode::ZeroCoupling: return "ZeroCoupling";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::UnstableBranch: return "UnstableBranch";
    case ErrorCode::BadBeta: return "BadBeta";
    case ErrorCode::UnstableSystem: return "UnstableSystem";
    case ErrorCode::TailTooFat: return "TailTooFat";
  }
  return "Unknown";
}

}  // namespace acs
