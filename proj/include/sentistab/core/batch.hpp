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

#include <span>
#include <vector>

#include "sentistab/core/divergence.hpp"

namespace sentistab::core {

/// Scores every record with score_record. The OpenMP version splits records
/// across threads; each output slot is written by exactly one iteration, so
/// the result is identical to the serial reference for any thread count.
std::vector<DivergenceScore> score_batch(std::span<const StabilityRecord> records,
                                         int threads = 0);

/// Single-threaded reference used by tests and the benchmark.
std::vector<DivergenceScore> score_batch_serial(std::span<const StabilityRecord> records);

/// Row-major [records x 3(1+I)] embedding matrix; all records must carry the
/// same number of rewrites (InvalidArgument otherwise).
std::vector<double> embedding_matrix(std::span<const StabilityRecord> records, int threads = 0);
std::vector<double> embedding_matrix_serial(std::span<const StabilityRecord> records);

}  // namespace sentistab::core
