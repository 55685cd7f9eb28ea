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

#include <map>

#include "zxsim/circuit.hpp"
#include "zxsim/lowering.hpp"
#include "zxsim/tensor.hpp"

namespace zxsim {

/// Exact output distribution of a small circuit. Keys pack output bits
/// little-endian: bit i of the key is output i.
struct OutcomeDistribution {
    uint32_t num_outputs = 0;
    std::map<uint64_t, double> probs;

    double at(uint64_t key) const {
        auto it = probs.find(key);
        return it == probs.end() ? 0.0 : it->second;
    }
};

/// Brute-force reference: enumerates channel outcome patterns, evolves a
/// statevector branching on every measurement, and accumulates exact
/// detector/observable (or raw measurement) probabilities.
///
/// Guards: <= 12 qubits, <= 16 measurements, <= 2^20 channel patterns.
OutcomeDistribution oracle_distribution(const Circuit &c, SampleMode mode);

/// Scalar value of a closed diagram contracted in reverse vertex order;
/// independent check of the forward contraction path.
cdouble oracle_zx_value(const Diagram &d, const std::vector<bool> &assignment);

}  // namespace zxsim
