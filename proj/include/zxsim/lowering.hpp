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
#include "zxsim/diagram.hpp"

namespace zxsim {

/// One Pauli applied when a channel bit fires.
struct BitAction {
    uint32_t qubit;
    char pauli;  // 'X', 'Y' or 'Z'
    bool operator==(const BitAction &o) const = default;
};

/// A group of channel bits with a joint probability table. Table index is
/// little-endian in parameter order: bit 0 of the index is the first
/// parameter of the group.
struct ChannelGroup {
    std::vector<uint32_t> param_indices;
    std::vector<double> table;
    std::vector<std::vector<BitAction>> actions;  // one list per bit
};

enum class SampleMode : uint8_t { detectors, measurements };

struct LoweredProgram {
    Diagram diagram;  // doubled; outputs are classical, detectors first
    std::vector<ChannelGroup> channels;
    uint32_t e_param_count = 0;
    uint32_t num_detectors = 0;
    uint32_t num_observables = 0;
    SampleMode mode = SampleMode::detectors;
};

/// Returns the probability table for a noise instruction, using the bit
/// conventions above ((x, z) pairs per qubit, little-endian).
std::vector<double> channel_table(Op op, const std::vector<double> &args);

LoweredProgram lower(const Circuit &c, SampleMode mode);

}  // namespace zxsim
