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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sentistab {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(std::string_view data);
std::string sha256_hex(std::string_view data);

/// First 8 bytes of SHA-256(key), read as a big-endian unsigned integer.
/// All seeded selection in the project goes through this so results are
/// bit-identical on every platform.
std::uint64_t hash_rank(std::string_view key);

/// Indices in [0, n) ordered by ascending hash_rank(prefix + index); ties
/// (practically impossible) fall back to the index.
std::vector<std::size_t> rank_order(std::size_t n, std::string_view prefix);

/// Deterministic integer stream keyed by "{seed}:{stream}:{counter}".
class HashStream {
 public:
  HashStream(std::uint64_t seed, std::string stream)
      : prefix_(std::to_string(seed) + ":" + std::move(stream) + ":") {}

  std::uint64_t next();
  /// Uniform-ish integer in [0, bound); bound must be > 0.
  std::size_t below(std::size_t bound);

 private:
  std::string prefix_;
  std::uint64_t counter_ = 0;
};

}  // namespace sentistab
