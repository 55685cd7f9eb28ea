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

#include "zxsim/simplify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "zxsim/tensor.hpp"

namespace zxsim {

namespace {

constexpr double kPi = std::numbers::pi;

bool boundary_adjacent(const Diagram &d, VertexId v) {
    for (const auto &[w, e] : d.neighbors(v)) {
        if (d.is_boundary(w)) {
            return true;
        }
    }
    return false;
}

// Neighborhood complementation step: a fresh Hadamard edge, except that a
// pre-existing one pairs up and annihilates with the Hopf factor 1/2.
void complement_edge(Diagram &d, VertexId x, VertexId y) {
    if (d.edge(x, y)) {
        d.remove_edge(x, y);
        d.scalar().mul_sqrt2_pow(-2);
    } else {
        d.add_edge(x, y, EdgeKind::hadamard);
    }
}

// Merge spider b into a (the connecting edge is already gone).
void fuse_into(Diagram &d, VertexId a, VertexId b) {
    d.vertex(a).phase += d.vertex(b).phase;
    auto edges = d.neighbors(b);  // copy; b's adjacency mutates below
    for (const auto &[w, e] : edges) {
        d.remove_edge(b, w);
        if (w == a) {
            continue;
        }
        d.add_edge(a, w, e.kind);
    }
    d.remove_vertex(b);
}

}  // namespace

// Fusion + identity removal to a local fixed point.
void fuse_identity_fixpoint(Diagram &d, RewriteTrace &trace) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (VertexId v : d.vertex_ids()) {
            if (!d.alive(v) || d.is_boundary(v)) {
                continue;
            }
            for (const auto &[w, e] : d.neighbors(v)) {
                if (e.kind == EdgeKind::plain && !d.is_boundary(w)) {
                    VertexId keep = std::min(v, w), drop = std::max(v, w);
                    d.remove_edge(keep, drop);
                    fuse_into(d, keep, drop);
                    trace.fusion++;
                    changed = true;
                    break;
                }
            }
            if (!d.alive(v)) {
                continue;
            }
            if (d.vertex(v).phase.is_zero() && d.degree(v) == 2) {
                auto it = d.neighbors(v).begin();
                auto [n1, e1] = *it;
                auto [n2, e2] = *std::next(it);
                if (d.is_boundary(n1) && d.is_boundary(n2)) {
                    continue;  // keep one spider between two boundaries
                }
                EdgeKind k = (e1.kind == e2.kind) ? EdgeKind::plain : EdgeKind::hadamard;
                d.remove_vertex(v);
                d.add_edge(n1, n2, k);
                trace.identity++;
                changed = true;
            }
        }
    }
}

void remove_isolated_spiders(Diagram &d, RewriteTrace &trace) {
    for (VertexId v : d.vertex_ids()) {
        if (d.is_boundary(v) || d.degree(v) != 0) {
            continue;
        }
        const Phase &p = d.vertex(v).phase;
        d.scalar().add_term(ScalarTerm::node(p.const_radians(), p.parity));
        d.remove_vertex(v);
        trace.copy++;
    }
}

namespace {
bool eligible_neighbors(const Diagram &d, VertexId v) {
    for (const auto &[w, e] : d.neighbors(v)) {
        if (e.kind != EdgeKind::hadamard || d.is_boundary(w) ||
            d.vertex(w).kind != VKind::z_spider) {
            return false;
        }
    }
    return true;
}
}  // namespace

// Local complementation at an internal +-pi/2 spider. The Pauli parity of
// the removed spider moves onto every neighbor and leaves a half-pi ledger
// term.
bool local_complement_step(Diagram &d, RewriteTrace &trace) {
    for (VertexId v : d.vertex_ids()) {
        if (d.is_boundary(v) || boundary_adjacent(d, v)) {
            continue;
        }
        const Phase p = d.vertex(v).phase;
        if (!p.is_proper_clifford() || !eligible_neighbors(d, v)) {
            continue;
        }
        int sign = p.exact == 2 ? +1 : -1;
        std::vector<VertexId> nbrs;
        for (const auto &[w, e] : d.neighbors(v)) {
            nbrs.push_back(w);
        }
        int64_t n = static_cast<int64_t>(nbrs.size());
        for (VertexId w : nbrs) {
            d.vertex(w).phase += Phase(sign > 0 ? 6 : 2, p.parity);
        }
        for (size_t i = 0; i < nbrs.size(); i++) {
            for (size_t j = i + 1; j < nbrs.size(); j++) {
                complement_edge(d, nbrs[i], nbrs[j]);
            }
        }
        d.remove_vertex(v);
        d.scalar().mul_sqrt2_pow((n - 1) * (n - 2) / 2);
        d.scalar().mul_const({std::cos(sign * kPi / 4), std::sin(sign * kPi / 4)});
        d.scalar().add_term(ScalarTerm::half_pi(-sign, p.parity));
        trace.local_complementation++;
        return true;
    }
    return false;
}

// Pivot about a Hadamard edge between two internal Pauli spiders.
bool pivot_step(Diagram &d, RewriteTrace &trace) {
    for (VertexId u : d.vertex_ids()) {
        if (!d.alive(u) || d.is_boundary(u) || boundary_adjacent(d, u)) {
            continue;
        }
        if (!d.vertex(u).phase.is_pauli() || !eligible_neighbors(d, u)) {
            continue;
        }
        for (const auto &[v, ev] : d.neighbors(u)) {
            if (boundary_adjacent(d, v) || !d.vertex(v).phase.is_pauli() ||
                !eligible_neighbors(d, v)) {
                continue;
            }
            const Phase pu = d.vertex(u).phase, pv = d.vertex(v).phase;
            std::vector<VertexId> a_set, b_set, c_set;
            for (const auto &[w, ew] : d.neighbors(u)) {
                if (w == v) {
                    continue;
                }
                if (d.edge(v, w)) {
                    c_set.push_back(w);
                } else {
                    a_set.push_back(w);
                }
            }
            for (const auto &[w, ew] : d.neighbors(v)) {
                if (w != u && !d.edge(u, w)) {
                    b_set.push_back(w);
                }
            }
            for (VertexId w : a_set) {
                d.vertex(w).phase += pv;
            }
            for (VertexId w : b_set) {
                d.vertex(w).phase += pu;
            }
            for (VertexId w : c_set) {
                d.vertex(w).phase += pu;
                d.vertex(w).phase += pv;
                d.vertex(w).phase += Phase(4);
            }
            for (VertexId x : a_set) {
                for (VertexId y : b_set) {
                    complement_edge(d, x, y);
                }
                for (VertexId y : c_set) {
                    complement_edge(d, x, y);
                }
            }
            for (VertexId x : b_set) {
                for (VertexId y : c_set) {
                    complement_edge(d, x, y);
                }
            }
            int64_t p = static_cast<int64_t>(a_set.size());
            int64_t q = static_cast<int64_t>(b_set.size());
            int64_t r = static_cast<int64_t>(c_set.size());
            d.scalar().mul_sqrt2_pow(1 - p - q - 2 * r + p * q + p * r + q * r);
            bool cu = pu.exact == 4, cv = pv.exact == 4;
            if (cu && cv) {
                d.scalar().mul_const({-1.0, 0.0});
            }
            if (cu && !pv.parity.empty()) {
                d.scalar().add_term(ScalarTerm::pi_pair(pv.parity, pv.parity));
            }
            if (cv && !pu.parity.empty()) {
                d.scalar().add_term(ScalarTerm::pi_pair(pu.parity, pu.parity));
            }
            if (!pu.parity.empty() && !pv.parity.empty()) {
                d.scalar().add_term(ScalarTerm::pi_pair(pu.parity, pv.parity));
            }
            d.remove_vertex(u);
            d.remove_vertex(v);
            trace.pivot++;
            return true;
        }
    }
    return false;
}

Diagram to_graph_like(Diagram d, RewriteTrace *trace_out) {
    if (!d.single_layer()) {
        throw std::invalid_argument("to_graph_like expects an undoubled diagram");
    }
    RewriteTrace local;
    RewriteTrace &trace = trace_out ? *trace_out : local;
    // Color change: X spiders become Z with toggled incident edges.
    for (VertexId v : d.vertex_ids()) {
        if (d.vertex(v).kind != VKind::x_spider) {
            continue;
        }
        d.vertex(v).kind = VKind::z_spider;
        auto edges = d.neighbors(v);
        for (const auto &[w, e] : edges) {
            EdgeKind flipped =
                e.kind == EdgeKind::plain ? EdgeKind::hadamard : EdgeKind::plain;
            d.remove_edge(v, w);
            d.add_edge(v, w, flipped);
        }
    }
    fuse_identity_fixpoint(d, trace);
    trace.final_vertices = d.vertex_count();
    trace.final_edges = d.edge_count();
    return d;
}

std::pair<Diagram, RewriteTrace> clifford_simplify(Diagram d) {
    RewriteTrace trace;
    d = to_graph_like(std::move(d), &trace);
    for (;;) {
        fuse_identity_fixpoint(d, trace);
        remove_isolated_spiders(d, trace);
        if (local_complement_step(d, trace)) {
            continue;
        }
        if (pivot_step(d, trace)) {
            continue;
        }
        break;
    }
    trace.final_vertices = d.vertex_count();
    trace.final_edges = d.edge_count();
    return {std::move(d), trace};
}

bool verify_semantics(const Diagram &before, const Diagram &after, double tol) {
    uint32_t n = std::max(before.num_params(), after.num_params());
    std::vector<std::vector<bool>> assignments;
    if (n <= 10) {
        for (uint64_t bits = 0; bits < (uint64_t(1) << n); bits++) {
            std::vector<bool> a(n);
            for (uint32_t i = 0; i < n; i++) {
                a[i] = (bits >> i) & 1;
            }
            assignments.push_back(std::move(a));
        }
    } else {
        std::mt19937 rng(0x5eed);
        for (int k = 0; k < 64; k++) {
            std::vector<bool> a(n);
            for (uint32_t i = 0; i < n; i++) {
                a[i] = rng() & 1;
            }
            assignments.push_back(std::move(a));
        }
    }
    for (const auto &a : assignments) {
        DenseTensor tb = to_tensor(before, a);
        DenseTensor ta = to_tensor(after, a);
        if (tb.data.size() != ta.data.size()) {
            return false;
        }
        for (size_t i = 0; i < tb.data.size(); i++) {
            if (std::abs(tb.data[i] - ta.data[i]) > tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace zxsim
