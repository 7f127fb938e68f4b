// Copyright 2026 The mapcones Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAPCONES_ERROR_HPP
#define MAPCONES_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mapcones {

enum class ErrorCode {
  ZeroVector,
  MissingDims,
  DimMismatch,
  NotHermitian,
  NotHermiticityPreserving,
  NotCompletelyPositive,
  NotPSD,
  NotAState,
  EmptyList,
  BadRank,
  RankTooHigh,
  BlockNotPSD,
  BadK,
  BadParam,
  BadFamily,
  Parse,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::MissingDims: return "MissingDims";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotHermiticityPreserving: return "NotHermiticityPreserving";
    case ErrorCode::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::RankTooHigh: return "RankTooHigh";
    case ErrorCode::BlockNotPSD: return "BlockNotPSD";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::BadParam: return "BadParam";
    case ErrorCode::BadFamily: return "BadFamily";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mapcones

#endif  // MAPCONES_ERROR_HPP
