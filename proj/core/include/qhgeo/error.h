// Copyright 2026 The qhgeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QHGEO_ERROR_H_
#define QHGEO_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhgeo {

enum class ErrorCode {
  kPointNotInterior,
  kVertexNotOnPath,
  kInvalidParams,
  kBadTruncation,
  kInvalidDomain,
  kEmptyGrid,
  kDisconnected,
  kPathExitsDomain,
  kSingularMap,
  kUnsupported,
  kParse,
  kNoConvergence,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPointNotInterior: return "PointNotInterior";
    case ErrorCode::kVertexNotOnPath: return "VertexNotOnPath";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kBadTruncation: return "BadTruncation";
    case ErrorCode::kInvalidDomain: return "InvalidDomain";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kPathExitsDomain: return "PathExitsDomain";
    case ErrorCode::kSingularMap: return "SingularMap";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kNoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can map it to a machine-readable record.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qhgeo

#endif  // QHGEO_ERROR_H_
