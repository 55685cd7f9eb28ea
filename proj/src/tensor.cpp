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

#include "zxsim/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zxsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Frontier contraction state: a dense tensor over currently-active legs.
// A leg is either a kept boundary index or the summation variable of a
// vertex that still has edges to unprocessed vertices.
struct Frontier {
    std::vector<VertexId> legs;
    std::vector<cdouble> data{cdouble{1.0, 0.0}};
    size_t max_width;

    explicit Frontier(size_t w) : max_width(w) {}

    size_t leg_pos(VertexId v) const {
        auto it = std::find(legs.begin(), legs.end(), v);
        return static_cast<size_t>(it - legs.begin());
    }

    void new_leg(VertexId v, cdouble one_weight) {
        if (legs.size() + 1 > max_width) {
            throw std::runtime_error("to_tensor: contraction width guard exceeded");
        }
        size_t n = data.size();
        std::vector<cdouble> next(n * 2);
        for (size_t i = 0; i < n; i++) {
            next[i] = data[i];
            next[i + n] = data[i] * one_weight;
        }
        legs.push_back(v);
        data = std::move(next);
    }

    void bind(VertexId u, VertexId v, bool hadamard) {
        size_t pu = leg_pos(u), pv = leg_pos(v);
        for (size_t i = 0; i < data.size(); i++) {
            bool a = (i >> pu) & 1, b = (i >> pv) & 1;
            if (hadamard) {
                data[i] *= kInvSqrt2 * ((a && b) ? -1.0 : 1.0);
            } else if (a != b) {
                data[i] = 0.0;
            }
        }
    }

    void sum_out(VertexId v) {
        size_t p = leg_pos(v);
        size_t n = data.size() / 2;
        std::vector<cdouble> next(n);
        size_t low_mask = (size_t(1) << p) - 1;
        for (size_t i = 0; i < n; i++) {
            size_t lo = i & low_mask;
            size_t hi = (i & ~low_mask) << 1;
            next[i] = data[hi | lo] + data[hi | lo | (size_t(1) << p)];
        }
        legs.erase(legs.begin() + static_cast<long>(p));
        data = std::move(next);
    }
};

DenseTensor contract(const Diagram &diagram, const std::vector<bool> &assignment,
                     size_t max_width, bool reverse) {
    const Diagram d = diagram.single_layer() ? diagram : undouble(diagram);
    std::vector<VertexId> order = d.vertex_ids();
    if (reverse) {
        std::reverse(order.begin(), order.end());
    }
    std::vector<size_t> rank(order.empty() ? 0 : *std::max_element(order.begin(), order.end()) + 1);
    for (size_t i = 0; i < order.size(); i++) {
        rank[order[i]] = i;
    }

    Frontier f(max_width);
    std::vector<int> pending(rank.size(), 0);
    for (VertexId v : order) {
        pending[v] = static_cast<int>(d.degree(v));
    }

    for (VertexId v : order) {
        const Vertex &vd = d.vertex(v);
        cdouble one_weight;
        if (vd.kind == VKind::boundary) {
            one_weight = 1.0;
        } else {
            double phi = vd.phase.radians(assignment);
            one_weight = {std::cos(phi), std::sin(phi)};
        }
        f.new_leg(v, one_weight);
        for (const auto &[w, e] : d.neighbors(v)) {
            if (rank[w] >= rank[v]) {
                continue;  // forward edge, bound later
            }
            // Color change folds X spiders into Z with toggled edges.
            bool had = (e.kind == EdgeKind::hadamard);
            if (d.vertex(v).kind == VKind::x_spider) {
                had = !had;
            }
            if (d.vertex(w).kind == VKind::x_spider) {
                had = !had;
            }
            f.bind(v, w, had);
            pending[v]--;
            pending[w]--;
            if (pending[w] == 0 && d.vertex(w).kind != VKind::boundary) {
                f.sum_out(w);
            }
        }
        if (pending[v] == 0 && vd.kind != VKind::boundary) {
            f.sum_out(v);
        }
    }

    // Reorder kept legs to the diagram's output order.
    DenseTensor result;
    result.legs = d.outputs();
    size_t n_legs = result.legs.size();
    if (f.legs.size() != n_legs) {
        throw std::runtime_error("to_tensor: dangling non-output boundary legs");
    }
    result.data.assign(size_t(1) << n_legs, cdouble{});
    cdouble ledger = d.scalar().eval(assignment);
    std::vector<size_t> src_pos(n_legs);
    for (size_t j = 0; j < n_legs; j++) {
        src_pos[j] = f.leg_pos(result.legs[j]);
    }
    for (size_t i = 0; i < f.data.size(); i++) {
        size_t idx = 0;
        for (size_t j = 0; j < n_legs; j++) {
            idx |= ((i >> src_pos[j]) & 1) << j;
        }
        result.data[idx] = f.data[i] * ledger;
    }
    return result;
}

}  // namespace

DenseTensor to_tensor(const Diagram &d, const std::vector<bool> &assignment, size_t max_width) {
    return contract(d, assignment, max_width, false);
}

DenseTensor contract_reverse_order(const Diagram &d, const std::vector<bool> &assignment,
                                   size_t max_width) {
    return contract(d, assignment, max_width, true);
}

}  // namespace zxsim
