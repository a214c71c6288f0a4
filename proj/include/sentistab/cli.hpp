// Copyright 2026 The sentistab Authors.
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

#pragma once

#include <iosfwd>

namespace sentistab::cli {

enum ExitStatus : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kBackend = 3,
  kPartial = 4,
};

/// Entry point of the sentistab command line. Reads stdin from `in`, writes
/// results to `out` and diagnostics to `err`; returns the exit status.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace sentistab::cli
