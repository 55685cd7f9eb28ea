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
#include <optional>
#include <string>
#include <vector>

#include "zxsim/phase.hpp"
#include "zxsim/scalar.hpp"

namespace zxsim {

using VertexId = uint32_t;

enum class VKind : uint8_t { boundary, z_spider, x_spider };
enum class EdgeKind : uint8_t { plain, hadamard };
enum class Layer : uint8_t { quantum, classical };

struct Vertex {
    VKind kind = VKind::z_spider;
    Layer layer = Layer::classical;
    Phase phase;
};

struct EdgeData {
    EdgeKind kind = EdgeKind::plain;
    Layer layer = Layer::classical;
};

/// Open graph of spiders with plain/Hadamard edges, ordered boundary lists
/// and a multiplicative scalar ledger. Both vertices and edges carry a layer
/// in doubled diagrams: quantum elements denote two conjugate copies.
/// The graph is simple: parallel edges and self-loops are resolved into
/// phases/scalars as they are inserted.
class Diagram {
  public:
    VertexId add_vertex(VKind kind, Layer layer, Phase phase = Phase());
    VertexId add_boundary_output(Layer layer = Layer::classical);

    /// Insert an edge, resolving a parallel edge or self-loop per the
    /// standard fusion/Hopf conventions (scalars counted once per layer
    /// copy). A parallel edge on a different layer is kept apart with an
    /// identity spider. Returns false if the edge was absorbed.
    bool add_edge(VertexId u, VertexId v, EdgeKind kind, Layer layer = Layer::classical);

    void remove_edge(VertexId u, VertexId v);
    void remove_vertex(VertexId v);

    bool alive(VertexId v) const { return v < verts_.size() && verts_[v].has_value(); }
    Vertex &vertex(VertexId v) { return *verts_[v]; }
    const Vertex &vertex(VertexId v) const { return *verts_[v]; }
    bool is_boundary(VertexId v) const { return vertex(v).kind == VKind::boundary; }

    const std::map<VertexId, EdgeData> &neighbors(VertexId v) const { return adj_[v]; }
    size_t degree(VertexId v) const { return adj_[v].size(); }
    std::optional<EdgeData> edge(VertexId u, VertexId v) const;
    /// Structural Hadamard-edge toggle (no Hopf resolution); used by the
    /// complementation rules on single-layer graphs.
    void toggle_hadamard_edge(VertexId u, VertexId v);

    std::vector<VertexId> vertex_ids() const;  // ascending, alive only
    size_t vertex_count() const;
    size_t edge_count() const;

    std::vector<VertexId> &outputs() { return outputs_; }
    const std::vector<VertexId> &outputs() const { return outputs_; }

    uint32_t num_params() const { return num_params_; }
    void set_num_params(uint32_t n) { num_params_ = n; }
    uint32_t fresh_param();

    ScalarLedger &scalar() { return scalar_; }
    const ScalarLedger &scalar() const { return scalar_; }

    /// True if every vertex and edge lives on the classical (single) layer.
    bool single_layer() const;

    /// Plain-text adjacency dump for golden tests.
    std::string dump_text() const;

  private:
    std::vector<std::optional<Vertex>> verts_;
    std::vector<std::map<VertexId, EdgeData>> adj_;
    std::vector<VertexId> outputs_;
    uint32_t num_params_ = 0;
    ScalarLedger scalar_;
};

/// Expands doubled (quantum) vertices/edges into two conjugate copies;
/// classical vertices fan out to both copies of their quantum wires.
Diagram undouble(const Diagram &d);

}  // namespace zxsim
