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

#include "zxsim/diagram.hpp"

#include <sstream>
#include <stdexcept>

namespace zxsim {

VertexId Diagram::add_vertex(VKind kind, Layer layer, Phase phase) {
    verts_.emplace_back(Vertex{kind, layer, std::move(phase)});
    adj_.emplace_back();
    return static_cast<VertexId>(verts_.size() - 1);
}

VertexId Diagram::add_boundary_output(Layer layer) {
    VertexId v = add_vertex(VKind::boundary, layer);
    outputs_.push_back(v);
    return v;
}

bool Diagram::add_edge(VertexId u, VertexId v, EdgeKind kind, Layer layer) {
    if (!alive(u) || !alive(v)) {
        throw std::logic_error("add_edge on dead vertex");
    }
    int mult = layer == Layer::quantum ? 2 : 1;
    if (u == v) {
        // Self-loop. A plain loop disappears; a Hadamard loop adds pi and a
        // factor 1/sqrt(2) per copy.
        if (kind == EdgeKind::hadamard) {
            vertex(u).phase += Phase(4);
            scalar_.mul_sqrt2_pow(-mult);
        }
        return false;
    }
    auto it = adj_[u].find(v);
    if (it == adj_[u].end()) {
        adj_[u][v] = EdgeData{kind, layer};
        adj_[v][u] = EdgeData{kind, layer};
        return true;
    }

    EdgeData existing = it->second;
    if (existing.layer != layer) {
        // Different wire altogether; keep it apart with an identity spider.
        VKind mid_kind = VKind::z_spider;
        Layer mid_layer = layer == Layer::quantum ? Layer::quantum : Layer::classical;
        VertexId mid = add_vertex(mid_kind, mid_layer, Phase(0));
        add_edge(u, mid, kind, layer);
        add_edge(mid, v, EdgeKind::plain, layer);
        return true;
    }
    if (is_boundary(u) || is_boundary(v)) {
        throw std::logic_error("parallel edge at boundary");
    }

    bool same_color = vertex(u).kind == vertex(v).kind;
    if (same_color) {
        if (existing.kind == EdgeKind::plain && kind == EdgeKind::plain) {
            // Two plain edges between same-color spiders collapse to one.
            return false;
        }
        if (existing.kind == EdgeKind::hadamard && kind == EdgeKind::hadamard) {
            remove_edge(u, v);
            scalar_.mul_sqrt2_pow(-2 * mult);
            return false;
        }
        // plain + Hadamard: single plain edge, pi on one endpoint, 1/sqrt(2).
        adj_[u][v].kind = EdgeKind::plain;
        adj_[v][u].kind = EdgeKind::plain;
        vertex(std::min(u, v)).phase += Phase(4);
        scalar_.mul_sqrt2_pow(-mult);
        return false;
    }

    // Differently colored endpoints.
    if (existing.kind == EdgeKind::plain && kind == EdgeKind::plain) {
        // Hopf: the pair disconnects with a factor 1/2 per copy.
        remove_edge(u, v);
        scalar_.mul_sqrt2_pow(-2 * mult);
        return false;
    }
    if (existing.kind == EdgeKind::hadamard && kind == EdgeKind::hadamard) {
        // Two Hadamard edges between Z and X equal a single one.
        return false;
    }
    adj_[u][v].kind = EdgeKind::hadamard;
    adj_[v][u].kind = EdgeKind::hadamard;
    vertex(std::min(u, v)).phase += Phase(4);
    scalar_.mul_sqrt2_pow(-mult);
    return false;
}

void Diagram::remove_edge(VertexId u, VertexId v) {
    adj_[u].erase(v);
    adj_[v].erase(u);
}

void Diagram::remove_vertex(VertexId v) {
    for (auto &[w, k] : adj_[v]) {
        adj_[w].erase(v);
    }
    adj_[v].clear();
    verts_[v].reset();
}

std::optional<EdgeData> Diagram::edge(VertexId u, VertexId v) const {
    auto it = adj_[u].find(v);
    if (it == adj_[u].end()) {
        return std::nullopt;
    }
    return it->second;
}

void Diagram::toggle_hadamard_edge(VertexId u, VertexId v) {
    auto it = adj_[u].find(v);
    if (it == adj_[u].end()) {
        adj_[u][v] = EdgeData{EdgeKind::hadamard, Layer::classical};
        adj_[v][u] = EdgeData{EdgeKind::hadamard, Layer::classical};
    } else {
        remove_edge(u, v);
    }
}

std::vector<VertexId> Diagram::vertex_ids() const {
    std::vector<VertexId> ids;
    ids.reserve(verts_.size());
    for (VertexId v = 0; v < verts_.size(); v++) {
        if (verts_[v]) {
            ids.push_back(v);
        }
    }
    return ids;
}

size_t Diagram::vertex_count() const {
    size_t n = 0;
    for (const auto &v : verts_) {
        n += v.has_value();
    }
    return n;
}

size_t Diagram::edge_count() const {
    size_t n = 0;
    for (VertexId v = 0; v < verts_.size(); v++) {
        if (verts_[v]) {
            n += adj_[v].size();
        }
    }
    return n / 2;
}

uint32_t Diagram::fresh_param() { return num_params_++; }

bool Diagram::single_layer() const {
    for (VertexId v = 0; v < verts_.size(); v++) {
        if (!verts_[v]) {
            continue;
        }
        if (verts_[v]->layer == Layer::quantum) {
            return false;
        }
        for (const auto &[w, e] : adj_[v]) {
            if (e.layer == Layer::quantum) {
                return false;
            }
        }
    }
    return true;
}

std::string Diagram::dump_text() const {
    std::ostringstream ss;
    for (VertexId v : vertex_ids()) {
        const Vertex &vd = vertex(v);
        ss << v << " ";
        switch (vd.kind) {
            case VKind::boundary: ss << "B"; break;
            case VKind::z_spider: ss << "Z"; break;
            case VKind::x_spider: ss << "X"; break;
        }
        ss << (vd.layer == Layer::quantum ? " q " : " c ");
        ss << vd.phase.str() << " :";
        for (const auto &[w, e] : adj_[v]) {
            ss << " " << w << (e.kind == EdgeKind::hadamard ? "h" : "p")
               << (e.layer == Layer::quantum ? "q" : "c");
        }
        ss << "\n";
    }
    ss << "outputs:";
    for (VertexId o : outputs_) {
        ss << " " << o;
    }
    ss << "\n";
    return ss.str();
}

Diagram undouble(const Diagram &d) {
    Diagram out;
    out.set_num_params(d.num_params());
    out.scalar() = d.scalar();  // edge resolutions below multiply into this
    size_t top = d.vertex_ids().empty() ? 0 : d.vertex_ids().back() + 1;
    std::vector<VertexId> base(top, 0);
    std::vector<bool> is_doubled(top, false);

    for (VertexId v : d.vertex_ids()) {
        const Vertex &vd = d.vertex(v);
        if (vd.layer == Layer::quantum) {
            VertexId a = out.add_vertex(vd.kind, Layer::classical, vd.phase);
            out.add_vertex(vd.kind, Layer::classical, vd.phase.conj());
            base[v] = a;
            is_doubled[v] = true;
        } else {
            base[v] = out.add_vertex(vd.kind, Layer::classical, vd.phase);
        }
    }
    for (VertexId v : d.vertex_ids()) {
        for (const auto &[w, e] : d.neighbors(v)) {
            if (w < v) {
                continue;
            }
            VertexId v2 = is_doubled[v] ? base[v] + 1 : base[v];
            VertexId w2 = is_doubled[w] ? base[w] + 1 : base[w];
            if (e.layer == Layer::quantum) {
                // One edge per conjugate copy.
                out.add_edge(base[v], base[w], e.kind);
                out.add_edge(v2, w2, e.kind);
            } else {
                if (is_doubled[v] && is_doubled[w]) {
                    throw std::logic_error("classical edge between quantum vertices");
                }
                // A classical wire fans out to both copies of a quantum vertex.
                out.add_edge(base[v], base[w], e.kind);
                if (is_doubled[v] || is_doubled[w]) {
                    out.add_edge(v2, w2, e.kind);
                }
            }
        }
    }
    for (VertexId o : d.outputs()) {
        out.outputs().push_back(base[o]);
        if (is_doubled[o]) {
            out.outputs().push_back(base[o] + 1);
        }
    }
    return out;
}

}  // namespace zxsim
