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

#include "zxsim/diagram.hpp"

namespace zxsim {

/// Non-Clifford content of a spider: the angle left over after removing the
/// largest Clifford part. Zero for Clifford spiders.
double magic_residual(const Phase &p);
bool is_magic(const Phase &p);

struct MagicGroup {
    enum class Kind : uint8_t { single, pair, cat5 };
    Kind kind;
    std::vector<VertexId> vertices;
    uint32_t term_count;
};

struct DecompositionPlan {
    std::vector<MagicGroup> groups;
    uint64_t total_terms = 1;  // product of per-group term counts
    uint32_t num_magic = 0;
    double rate = 0.0;  // log2(total_terms) / num_magic
};

/// Greedy grouping of magic spiders: same-angle groups of five first, then
/// pi/4-like pairs, then singles. Deterministic in vertex id order.
DecompositionPlan plan_decomposition(const Diagram &d);

struct CliffordTerm {
    cdouble weight;
    Diagram diagram;
};

/// Weighted sum of Clifford diagrams equal to `d` for every parameter
/// assignment. The plan must cover all magic vertices of `d`.
std::vector<CliffordTerm> decompose_magic(const Diagram &d, const DecompositionPlan &plan);

}  // namespace zxsim
