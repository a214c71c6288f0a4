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

#include "sentistab/core/distribution.hpp"

#include <cmath>

#include "sentistab/error.hpp"

namespace sentistab::core {

SentimentDistribution SentimentDistribution::of(double neg, double neu, double pos) {
  return clamp_normalize({neg, neu, pos});
}

SentimentDistribution clamp_normalize(const std::array<double, kNumClasses>& raw,
                                      const SmoothingConfig& cfg) {
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0 / 3.0)) {
    throw Error(ErrorCode::InvalidArgument, "smoothing delta must lie in (0, 1/3)");
  }
  double sum = 0.0;
  for (double v : raw) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "distribution component is not finite");
    if (v < 0.0) throw Error(ErrorCode::NegativeInput, "distribution component is negative");
    sum += v;
  }
  if (sum == 0.0) return SentimentDistribution{};
  if (!std::isfinite(sum)) throw Error(ErrorCode::NonFiniteInput, "distribution sum overflows");

  std::array<double, kNumClasses> p{};
  for (std::size_t c = 0; c < kNumClasses; ++c) p[c] = raw[c] / sum;

  // Floor at delta, then shrink the free components to absorb the added
  // mass. Shrinking can push another component under the floor, so repeat;
  // at most kNumClasses - 1 rounds are needed.
  std::array<bool, kNumClasses> floored{};
  for (std::size_t round = 0; round < kNumClasses; ++round) {
    bool changed = false;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      if (!floored[c] && p[c] < cfg.delta) {
        floored[c] = true;
        changed = true;
      }
    }
    if (!changed) break;
    double free_mass = 0.0;
    double floor_mass = 0.0;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      if (floored[c]) {
        floor_mass += cfg.delta;
      } else {
        free_mass += p[c];
      }
    }
    double scale = (1.0 - floor_mass) / free_mass;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      p[c] = floored[c] ? cfg.delta : p[c] * scale;
    }
  }
  return SentimentDistribution(p);
}

}  // namespace sentistab::core
