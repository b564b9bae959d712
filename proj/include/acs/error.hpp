#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acs {

enum class ErrorCode {
  InvalidArgument,
  CutoffOverflow,
  PoleAtSouthPole,
  CombinatoricsOverflow,
  ExponentialNoConvergence,
  ZeroCoupling,
  NoConvergence,
  GridTooCoarse,
  UnstableBranch,
  BadBeta,
  UnstableSystem,
  TailTooFat,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this exception; the code is what
// callers (and the CLI exit-status mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace acs
