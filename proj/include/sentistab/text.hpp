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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sentistab {

/// Canonical tokenizer: ASCII letters are lowercased and tokens are maximal
/// runs of alphanumeric bytes. Bytes >= 0x80 count as alphanumeric so UTF-8
/// words stay whole.
std::vector<std::string> tokenize(std::string_view text);

/// Number of canonical tokens; the single length measure used everywhere.
std::size_t word_count(std::string_view text);

bool is_token_byte(unsigned char c) noexcept;

/// Collapses whitespace runs to a single space and trims both ends.
std::string collapse_whitespace(std::string_view text);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace sentistab
