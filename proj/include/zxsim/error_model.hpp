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

#include <string>

#include "zxsim/gf2.hpp"
#include "zxsim/lowering.hpp"

namespace zxsim {

/// One reduced error source. Singles carry a probability; groups whose
/// joint table is not a Bernoulli product stay joint and are sampled from
/// their table.
struct ErrorMechanism {
    std::vector<BitRow> f_vectors;  // distinct effects in f space
    double probability = 0.0;       // singles (f_vectors.size() == 1)
    std::vector<double> table;      // joints: 2^k entries, bit i of the
                                    // index selects f_vectors[i]
    bool joint() const { return f_vectors.size() > 1; }
};

/// Flip matrix over the direct outputs: bit-packed rows (one per output,
/// width = mechanism count) plus the column-major sparse view.
struct FlipMatrix {
    std::vector<BitRow> rows;
    std::vector<std::vector<uint32_t>> columns;  // flipped output rows
};

struct ErrorModel {
    uint32_t f_width = 0;
    BitRow base_offset;  // deterministic flips (probability-one sources)
    std::vector<ErrorMechanism> mechanisms;
};

/// Channel reduction: null-column elimination, canonical ordering,
/// identical-signature merging by XOR convolution, subset absorption, and
/// exact Bernoulli factorization. `e_images` maps each e parameter to its
/// effect in f space (a column of the basis transform).
ErrorModel reduce_channels(const std::vector<ChannelGroup> &channels,
                           const std::vector<BitRow> &e_images, uint32_t f_width);

/// XOR convolution of two tables over the same outcome space.
std::vector<double> xor_convolve(const std::vector<double> &a, const std::vector<double> &b);

}  // namespace zxsim
