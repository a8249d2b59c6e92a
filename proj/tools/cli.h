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

#ifndef QHGEO_TOOLS_CLI_H_
#define QHGEO_TOOLS_CLI_H_

#include <iosfwd>

namespace qhgeo::cli {

/// Entry point of the qhgeo tool. Returns 0 on success, 2 on usage errors
/// and 1 on computation errors (with a JSON error record on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qhgeo::cli

#endif  // QHGEO_TOOLS_CLI_H_
