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

#include "sentistab/core/batch.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>

#include "sentistab/error.hpp"

namespace sentistab::core {

namespace {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

std::size_t embedding_width(std::span<const StabilityRecord> records) {
  if (records.empty()) return 0;
  const std::size_t rewrites = records.front().rewrites.size();
  for (const auto& rec : records) {
    if (rec.rewrites.size() != rewrites) {
      throw Error(ErrorCode::InvalidArgument, "records carry different rewrite counts");
    }
  }
  if (rewrites == 0) throw Error(ErrorCode::EmptyRewrites, "feature embedding needs at least one rewrite");
  return kNumClasses * (1 + rewrites);
}

}  // namespace

std::vector<DivergenceScore> score_batch(std::span<const StabilityRecord> records, int threads) {
  std::vector<DivergenceScore> out(records.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = score_record(records[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(sentistab_score_batch_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<DivergenceScore> score_batch_serial(std::span<const StabilityRecord> records) {
  std::vector<DivergenceScore> out;
  out.reserve(records.size());
  for (const auto& rec : records) out.push_back(score_record(rec));
  return out;
}

std::vector<double> embedding_matrix(std::span<const StabilityRecord> records, int threads) {
  const std::size_t width = embedding_width(records);
  std::vector<double> out(records.size() * width);
  const auto n = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& rec = records[static_cast<std::size_t>(i)];
    double* row = out.data() + static_cast<std::size_t>(i) * width;
    std::copy(rec.original.values().begin(), rec.original.values().end(), row);
    row += kNumClasses;
    for (const auto& r : rec.rewrites) {
      std::copy(r.distribution.values().begin(), r.distribution.values().end(), row);
      row += kNumClasses;
    }
  }
  return out;
}

std::vector<double> embedding_matrix_serial(std::span<const StabilityRecord> records) {
  const std::size_t width = embedding_width(records);
  std::vector<double> out;
  out.reserve(records.size() * width);
  for (const auto& rec : records) {
    auto row = feature_embedding(rec);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

}  // namespace sentistab::core
