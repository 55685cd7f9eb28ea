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

#include <vector>

#include "zxsim/diagram.hpp"

namespace zxsim {

/// Dense linear map over the diagram boundary. Entry index bit j holds the
/// value of legs[j] (outputs in declaration order; legs[0] least significant).
struct DenseTensor {
    std::vector<VertexId> legs;
    std::vector<cdouble> data;

    cdouble scalar() const { return data.size() == 1 ? data[0] : cdouble{}; }
};

/// Contract a (possibly doubled) diagram with every parity resolved against
/// the assignment; ledger included. Guarded dense contraction for tests and
/// oracles only. Vertices are eliminated in ascending id order.
DenseTensor to_tensor(const Diagram &d, const std::vector<bool> &assignment,
                      size_t max_width = 24);

/// Same semantics contracted in reverse id order; serves as an independent
/// check of the contraction path.
DenseTensor contract_reverse_order(const Diagram &d, const std::vector<bool> &assignment,
                                   size_t max_width = 24);

}  // namespace zxsim
