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

#include "zxsim/decompose.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace zxsim {

namespace {

constexpr double kPi = std::numbers::pi;

cdouble expi(double t) { return {std::cos(t), std::sin(t)}; }

// Clear the non-Clifford content of a spider, leaving its Clifford part.
void clear_residual(Diagram &d, VertexId v) {
    Phase &p = d.vertex(v).phase;
    p.exact &= ~1;
    p.generic.reset();
}

// True when the residual is an odd multiple of pi/4, so that sums and
// differences of two residuals are Clifford.
bool quarter_like(const Phase &p) { return !p.has_generic() && (p.exact & 1); }

using Term = CliffordTerm;

std::vector<Term> expand_single(const std::vector<Term> &in, VertexId v) {
    std::vector<Term> out;
    out.reserve(in.size() * 2);
    for (const Term &t : in) {
        double theta = magic_residual(t.diagram.vertex(v).phase);
        cdouble e = expi(theta);
        Term zero{t.weight * (1.0 + e) * 0.5, t.diagram};
        clear_residual(zero.diagram, v);
        out.push_back(std::move(zero));

        Term pi_branch{t.weight * (1.0 - e) * 0.5, t.diagram};
        clear_residual(pi_branch.diagram, v);
        pi_branch.diagram.vertex(v).phase += Phase(4);
        out.push_back(std::move(pi_branch));
    }
    return out;
}

// Pair rule for quarter-like residuals alpha, beta: one branch merges the
// two spiders with phase alpha+beta, the other routes them through an X(pi)
// with phase alpha-beta and weight e^{i beta}.
std::vector<Term> expand_pair(const std::vector<Term> &in, VertexId u, VertexId v) {
    std::vector<Term> out;
    out.reserve(in.size() * 2);
    for (const Term &t : in) {
        double alpha = magic_residual(t.diagram.vertex(u).phase);
        double beta = magic_residual(t.diagram.vertex(v).phase);

        Term merge{t.weight, t.diagram};
        clear_residual(merge.diagram, u);
        clear_residual(merge.diagram, v);
        VertexId g = merge.diagram.add_vertex(VKind::z_spider, Layer::classical,
                                              Phase::from_radians(alpha + beta));
        merge.diagram.add_edge(u, g, EdgeKind::plain);
        merge.diagram.add_edge(g, v, EdgeKind::plain);
        out.push_back(std::move(merge));

        Term cross{t.weight * expi(beta), t.diagram};
        clear_residual(cross.diagram, u);
        clear_residual(cross.diagram, v);
        cross.diagram.vertex(u).phase += Phase::from_radians(alpha - beta);
        VertexId m = cross.diagram.add_vertex(VKind::z_spider, Layer::classical, Phase(4));
        cross.diagram.add_edge(u, m, EdgeKind::hadamard);
        cross.diagram.add_edge(m, v, EdgeKind::hadamard);
        out.push_back(std::move(cross));
    }
    return out;
}

// Equal-angle group of five. The product of residual phases e^{i theta k}
// (k = number of pi-branches among the five spiders) interpolates over six
// Clifford fragments: even/odd selectors built from a Hadamard-connected
// hub, the same with quarter turns on the hosts, and all-|0> / all-|1>
// projector tips.
std::vector<Term> expand_cat5(const std::vector<Term> &in, const std::vector<VertexId> &vs) {
    std::vector<Term> out;
    out.reserve(in.size() * 6);
    for (const Term &t : in) {
        double theta = magic_residual(t.diagram.vertex(vs[0]).phase);
        cdouble e1 = expi(theta);
        cdouble e2 = expi(2 * theta), e3 = expi(3 * theta);
        cdouble e4 = expi(4 * theta), e5 = expi(5 * theta);
        const double rt2 = std::sqrt(2.0);
        const double s32 = std::pow(2.0, 1.5);
        const cdouble iu{0.0, 1.0};

        struct Fragment {
            cdouble weight;
            int hub_phase;       // -1: no hub; else exact quarter turns
            int host_extra;      // exact quarter turns added to every host
            int tip_phase;       // -1: no tips; else exact quarter turns
        };
        const Fragment fragments[6] = {
            {rt2 * (e4 + e2), 0, 0, -1},
            {rt2 * (e4 - e2), 0, 2, -1},
            {(1.0 - e4) / s32, -1, 0, 0},
            {rt2 * (e1 + e3), 4, 0, -1},
            {-iu * rt2 * (e1 - e3), 4, 2, -1},
            {(e5 - e1) / s32, -1, 0, 4},
        };

        for (const Fragment &f : fragments) {
            Term branch{t.weight * f.weight, t.diagram};
            for (VertexId v : vs) {
                clear_residual(branch.diagram, v);
                if (f.host_extra) {
                    branch.diagram.vertex(v).phase += Phase(f.host_extra);
                }
            }
            if (f.hub_phase >= 0) {
                VertexId hub = branch.diagram.add_vertex(VKind::z_spider, Layer::classical,
                                                         Phase(f.hub_phase));
                for (VertexId v : vs) {
                    branch.diagram.add_edge(hub, v, EdgeKind::hadamard);
                }
            }
            if (f.tip_phase >= 0) {
                for (VertexId v : vs) {
                    VertexId tip = branch.diagram.add_vertex(VKind::z_spider, Layer::classical,
                                                             Phase(f.tip_phase));
                    branch.diagram.add_edge(tip, v, EdgeKind::hadamard);
                }
            }
            out.push_back(std::move(branch));
        }
    }
    return out;
}

}  // namespace

double magic_residual(const Phase &p) {
    double r = (p.exact & 1) ? kPi / 4 : 0.0;
    if (p.generic) {
        r += *p.generic;
    }
    return r;
}

bool is_magic(const Phase &p) { return !p.is_clifford(); }

DecompositionPlan plan_decomposition(const Diagram &d) {
    DecompositionPlan plan;
    // Bucket magic spiders by residual angle; vertex order keeps the plan
    // deterministic.
    std::map<double, std::vector<VertexId>> classes;
    for (VertexId v : d.vertex_ids()) {
        if (!d.is_boundary(v) && is_magic(d.vertex(v).phase)) {
            classes[magic_residual(d.vertex(v).phase)].push_back(v);
            plan.num_magic++;
        }
    }
    for (auto &[theta, vs] : classes) {
        size_t i = 0;
        while (vs.size() - i >= 5) {
            plan.groups.push_back(MagicGroup{MagicGroup::Kind::cat5,
                                             {vs[i], vs[i + 1], vs[i + 2], vs[i + 3], vs[i + 4]},
                                             6});
            i += 5;
        }
        bool pairable = quarter_like(d.vertex(vs[0]).phase);
        while (pairable && vs.size() - i >= 2) {
            plan.groups.push_back(
                MagicGroup{MagicGroup::Kind::pair, {vs[i], vs[i + 1]}, 2});
            i += 2;
        }
        while (i < vs.size()) {
            plan.groups.push_back(MagicGroup{MagicGroup::Kind::single, {vs[i]}, 2});
            i++;
        }
    }
    for (const MagicGroup &g : plan.groups) {
        plan.total_terms *= g.term_count;
    }
    plan.rate = plan.num_magic ? std::log2(static_cast<double>(plan.total_terms)) / plan.num_magic
                               : 0.0;
    return plan;
}

std::vector<CliffordTerm> decompose_magic(const Diagram &d, const DecompositionPlan &plan) {
    std::vector<CliffordTerm> terms;
    terms.push_back(CliffordTerm{{1.0, 0.0}, d});
    for (const MagicGroup &g : plan.groups) {
        switch (g.kind) {
            case MagicGroup::Kind::single:
                terms = expand_single(terms, g.vertices[0]);
                break;
            case MagicGroup::Kind::pair:
                terms = expand_pair(terms, g.vertices[0], g.vertices[1]);
                break;
            case MagicGroup::Kind::cat5:
                terms = expand_cat5(terms, g.vertices);
                break;
        }
    }
    for (const CliffordTerm &t : terms) {
        for (VertexId v : t.diagram.vertex_ids()) {
            if (!t.diagram.is_boundary(v) && is_magic(t.diagram.vertex(v).phase)) {
                throw std::logic_error("decomposition left a magic vertex behind");
            }
        }
    }
    return terms;
}

}  // namespace zxsim
