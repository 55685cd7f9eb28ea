// Copyright 2026 The zxsim Authors
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

#include "zxsim/compile.hpp"

namespace zxsim {

/// Output bits, column-major: one packed word row per output bit position.
struct SampleRecord {
    size_t shots = 0;
    uint32_t width = 0;
    std::vector<std::vector<uint64_t>> columns;

    bool get(size_t shot, uint32_t output) const {
        return (columns[output][shot >> 6] >> (shot & 63)) & 1;
    }
};

struct SamplerOptions {
    uint64_t seed = 0;
    size_t batch_size = 65536;
    uint32_t threads = 0;  // 0: hardware concurrency
    double sparse_threshold = 8.0;
    bool force_dense = false;
};

struct FlipEvent {
    size_t shot;
    uint32_t mechanism;
    bool operator==(const FlipEvent &o) const = default;
};

/// Sparse error stream: emits exactly the firing (shot, mechanism) pairs by
/// sampling inter-event gaps geometrically per mechanism. Requires all
/// mechanisms factorized to single probabilities.
std::vector<FlipEvent> geometric_stream(const ErrorModel &model, uint64_t seed, size_t shots);

/// Dense error batch: every mechanism drawn per shot, f configurations
/// accumulated by bit-packed XOR. Shot indexing is global, so results do
/// not depend on the batch split.
void sample_error_batch(const CompiledSampler &cs, uint64_t seed, size_t first_shot,
                        ParamBatch &batch);

SampleRecord sample_detectors(const CompiledSampler &cs, size_t shots,
                              const SamplerOptions &opt);
SampleRecord sample_measurements(const CompiledSampler &cs, size_t shots,
                                 const SamplerOptions &opt);

/// Exact probability of one full outcome, marginalized over the noise by
/// enumeration (guarded at 20 bits of mechanism entropy).
double probability_of(const CompiledSampler &cs, const std::vector<bool> &outcome);

/// Exact probability at a fixed f configuration.
double probability_of_at(const CompiledSampler &cs, const std::vector<bool> &outcome,
                         const BitRow &f_assignment);

}  // namespace zxsim
