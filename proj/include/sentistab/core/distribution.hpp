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

namespace sentistab::core {

/// Class order is fixed everywhere, including serialization.
enum class SentimentClass : std::size_t { Negative = 0, Neutral = 1, Positive = 2 };
inline constexpr std::size_t kNumClasses = 3;

struct SmoothingConfig {
  double delta = 1e-6;
};

/// Probability vector over (negative, neutral, positive). Only obtainable
/// through clamp_normalize, so every instance has all components >= delta
/// and a finite log.
class SentimentDistribution {
 public:
  /// Uniform distribution.
  SentimentDistribution() : p_{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0} {}

  double negative() const noexcept { return p_[0]; }
  double neutral() const noexcept { return p_[1]; }
  double positive() const noexcept { return p_[2]; }
  double operator[](std::size_t c) const noexcept { return p_[c]; }
  const std::array<double, kNumClasses>& values() const noexcept { return p_; }

  friend bool operator==(const SentimentDistribution&,
                         const SentimentDistribution&) = default;

  /// Shorthand for clamp_normalize with the default smoothing.
  static SentimentDistribution of(double neg, double neu, double pos);

 private:
  explicit SentimentDistribution(const std::array<double, kNumClasses>& p) : p_(p) {}
  friend SentimentDistribution clamp_normalize(const std::array<double, kNumClasses>&,
                                               const SmoothingConfig&);

  std::array<double, kNumClasses> p_;
};

/// Normalizes a non-negative 3-vector, floors every component at delta and
/// rescales the unfloored components so the total stays 1. An all-zero
/// vector maps to uniform. Throws NonFiniteInput / NegativeInput.
SentimentDistribution clamp_normalize(const std::array<double, kNumClasses>& raw,
                                      const SmoothingConfig& cfg = {});

}  // namespace sentistab::core
