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

#include "sentistab/hashing.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <stdexcept>

namespace sentistab {

Sha256Digest sha256(std::string_view data) {
  Sha256Digest digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != digest.size()) {
    throw std::runtime_error("EVP_Digest(sha256) failed");
  }
  return digest;
}

std::string sha256_hex(std::string_view data) {
  static constexpr char kHex[] = "0123456789abcdef";
  auto digest = sha256(data);
  std::string out;
  out.reserve(64);
  for (auto b : digest) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xF]);
  }
  return out;
}

std::uint64_t hash_rank(std::string_view key) {
  auto digest = sha256(key);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | digest[i];
  return v;
}

std::vector<std::size_t> rank_order(std::size_t n, std::string_view prefix) {
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed(n);
  std::string key(prefix);
  for (std::size_t i = 0; i < n; ++i) {
    key.resize(prefix.size());
    key += std::to_string(i);
    keyed[i] = {hash_rank(key), i};
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::size_t> order(n);
  std::transform(keyed.begin(), keyed.end(), order.begin(),
                 [](const auto& p) { return p.second; });
  return order;
}

std::uint64_t HashStream::next() {
  return hash_rank(prefix_ + std::to_string(counter_++));
}

std::size_t HashStream::below(std::size_t bound) {
  return static_cast<std::size_t>(next() % bound);
}

}  // namespace sentistab
