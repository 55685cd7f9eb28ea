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

#include "zxsim/circuit.hpp"
#include "zxsim/decompose.hpp"
#include "zxsim/error_model.hpp"
#include "zxsim/phase_terms.hpp"
#include "zxsim/simplify.hpp"

namespace zxsim {

/// Output bit read directly from the f configuration.
struct DirectOutput {
    uint32_t output_index;
    bool flip_const;              // set when the noiseless value is 1
    std::vector<uint32_t> f_bits; // parity over f
};

/// Connected component that needs autoregressive evaluation. Chain order:
/// tensors for P(prefix, bit_j = 0); previously sampled bits enter as the
/// parameters f_width .. f_width+j-1.
struct AutoComponent {
    std::vector<uint32_t> output_indices;  // global outputs in chain order
    PhaseTermTensors normalization;
    std::vector<PhaseTermTensors> marginals;
    uint32_t num_magic = 0;
    uint64_t chi = 1;
};

struct CompiledStats {
    uint64_t chi = 1;              // product over components
    double rate = 0.0;             // log2(chi) / num_magic
    uint32_t num_magic = 0;
    uint32_t num_mechanisms = 0;
    uint32_t rank = 0;             // f count
    double avg_flip_weight = 0.0;  // mean direct flips per single mechanism
    bool pure_clifford_deterministic = false;
    bool separation_complete = false;
    uint32_t non_separated_detectors = 0;
    std::vector<uint64_t> component_terms;
    RewriteTrace reduction;
};

/// Everything sampling needs; immutable after compilation and safe to share
/// across threads.
struct CompiledSampler {
    SampleMode mode = SampleMode::detectors;
    uint32_t num_detectors = 0;
    uint32_t num_observables = 0;
    uint32_t num_outputs = 0;
    uint32_t f_width = 0;

    ErrorModel error_model;
    FlipMatrix flips;  // rows: outputs (direct rows carry the parities)
    std::vector<DirectOutput> direct;
    std::vector<AutoComponent> components;
    std::vector<std::vector<double>> detector_coords;
    CompiledStats stats;
};

CompiledSampler compile_circuit(const Circuit &c, SampleMode mode);

/// Detector error model text: one deterministic `error(p) D... L...` line
/// per mechanism, with joint groups split per outcome. Requires every
/// output to be direct.
std::string export_dem(const CompiledSampler &cs);

/// Key-value stats block for the CLI.
std::string format_stats(const CompiledSampler &cs);

}  // namespace zxsim
