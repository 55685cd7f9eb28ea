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

struct RewriteTrace {
    uint64_t fusion = 0;
    uint64_t identity = 0;
    uint64_t local_complementation = 0;
    uint64_t pivot = 0;
    uint64_t hopf = 0;
    uint64_t copy = 0;  // isolated state removals into the ledger
    size_t final_vertices = 0;
    size_t final_edges = 0;
};

/// Converts a single-layer diagram to graph-like form: Z spiders only,
/// plain-connected spiders fused, identities removed, parallel Hadamard
/// edges cancelled with scalar bookkeeping.
Diagram to_graph_like(Diagram d, RewriteTrace *trace = nullptr);

/// Single rewrite steps on a graph-like diagram; each returns whether a
/// match was found (applied at the smallest eligible vertex id).
bool local_complement_step(Diagram &d, RewriteTrace &trace);
bool pivot_step(Diagram &d, RewriteTrace &trace);
void fuse_identity_fixpoint(Diagram &d, RewriteTrace &trace);
void remove_isolated_spiders(Diagram &d, RewriteTrace &trace);

/// Runs local complementation and pivoting to the fixed point where no
/// internal proper-Clifford spiders and no adjacent internal Pauli pairs
/// remain. Pauli parities ride along; they never block a rewrite.
std::pair<Diagram, RewriteTrace> clifford_simplify(Diagram d);

/// Test oracle: tensor equality of two diagrams over parameter assignments
/// (exhaustive up to 10 parameters, 64 pseudo-random ones beyond).
bool verify_semantics(const Diagram &before, const Diagram &after, double tol = 1e-9);

}  // namespace zxsim
