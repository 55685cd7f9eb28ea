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

#include "zxsim/compile.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "zxsim/lowering.hpp"

namespace zxsim {

namespace {

// Connected components over the reduced diagram, boundaries included.
struct Components {
    std::vector<int> label;  // -1 for dead vertices
    int count = 0;
};

Components find_components(const Diagram &d) {
    size_t top = d.vertex_ids().empty() ? 0 : d.vertex_ids().back() + 1;
    Components comp;
    comp.label.assign(top, -1);
    for (VertexId root : d.vertex_ids()) {
        if (comp.label[root] != -1) {
            continue;
        }
        int id = comp.count++;
        std::vector<VertexId> stack = {root};
        comp.label[root] = id;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (const auto &[w, e] : d.neighbors(v)) {
                if (comp.label[w] == -1) {
                    comp.label[w] = id;
                    stack.push_back(w);
                }
            }
        }
    }
    return comp;
}

// Replace an output boundary by tracing it out.
void trace_output(Diagram &d, VertexId b) {
    auto nbrs = d.neighbors(b);
    if (nbrs.empty()) {
        d.remove_vertex(b);
        return;
    }
    auto [w, e] = *nbrs.begin();
    if (e.kind == EdgeKind::plain) {
        d.remove_vertex(b);
    } else {
        // Tracing through a Hadamard edge projects the neighbor side onto
        // sqrt(2)<0|, which a phase-free pendant provides exactly.
        d.vertex(b) = Vertex{VKind::z_spider, Layer::classical, Phase(0)};
    }
}

// Replace an output boundary by projecting it onto the bit given as a
// parity (an empty parity projects onto 0).
void project_output(Diagram &d, VertexId b, Parity bit) {
    auto nbrs = d.neighbors(b);
    if (nbrs.empty()) {
        d.remove_vertex(b);
        return;
    }
    auto [w, e] = *nbrs.begin();
    Phase phase = Phase::pauli(std::move(bit));
    if (e.kind == EdgeKind::plain) {
        d.remove_vertex(b);
        VertexId nv = d.add_vertex(VKind::z_spider, Layer::classical, std::move(phase));
        d.add_edge(w, nv, EdgeKind::hadamard);
    } else {
        d.remove_vertex(b);
        d.vertex(w).phase += phase;
    }
    d.scalar().mul_sqrt2_pow(-1);
}

struct ComponentBundle {
    std::vector<VertexId> outputs;  // boundary ids in the reduced diagram
    std::vector<VertexId> spiders;
};

PhaseTermTensors tensors_for(const Diagram &closed, const DecompositionPlan &plan,
                             uint32_t width) {
    std::vector<CliffordTerm> branches = decompose_magic(closed, plan);
    std::vector<ScalarLedger> ledgers;
    ledgers.reserve(branches.size());
    std::vector<WeightedLedger> weighted;
    for (CliffordTerm &br : branches) {
        auto [reduced, trace] = clifford_simplify(std::move(br.diagram));
        if (reduced.vertex_count() != 0) {
            throw std::logic_error("clifford branch did not reduce to a scalar");
        }
        ledgers.push_back(reduced.scalar());
        weighted.push_back(WeightedLedger{br.weight, nullptr});
    }
    for (size_t i = 0; i < ledgers.size(); i++) {
        weighted[i].ledger = &ledgers[i];
    }
    return assemble_tensors(weighted, width);
}

}  // namespace

CompiledSampler compile_circuit(const Circuit &c, SampleMode mode) {
    LoweredProgram lowered = lower(c, mode);
    auto [reduced, trace] = clifford_simplify(undouble(lowered.diagram));

    CompiledSampler cs;
    cs.mode = mode;
    cs.num_detectors = mode == SampleMode::detectors ? lowered.num_detectors : 0;
    cs.num_observables = mode == SampleMode::detectors ? lowered.num_observables : 0;
    cs.num_outputs = static_cast<uint32_t>(reduced.outputs().size());
    cs.stats.reduction = trace;
    for (const auto &det : c.detectors) {
        cs.detector_coords.push_back(det.coords);
    }

    // Group surviving vertices by connected component; closed components
    // carry only normalization content and are dropped.
    Components comp = find_components(reduced);
    std::vector<ComponentBundle> bundles(comp.count);
    for (uint32_t out = 0; out < reduced.outputs().size(); out++) {
        bundles[comp.label[reduced.outputs()[out]]].outputs.push_back(out);
    }
    for (VertexId v : reduced.vertex_ids()) {
        if (!reduced.is_boundary(v)) {
            bundles[comp.label[v]].spiders.push_back(v);
        }
    }

    // The f basis spans every parity referenced by an output component.
    Gf2Basis basis(reduced.num_params());
    for (const ComponentBundle &b : bundles) {
        if (b.outputs.empty()) {
            continue;
        }
        for (VertexId v : b.spiders) {
            const Parity &p = reduced.vertex(v).phase.parity;
            if (!p.empty()) {
                basis.insert(parity_to_row(p, reduced.num_params()));
            }
        }
    }
    cs.f_width = basis.rank();
    cs.stats.rank = basis.rank();

    auto express_parity = [&](const Parity &p) {
        return basis.express(parity_to_row(p, reduced.num_params()));
    };

    // Error mechanisms over f space.
    std::vector<BitRow> e_images;
    for (uint32_t e = 0; e < reduced.num_params(); e++) {
        BitRow unit(reduced.num_params());
        unit.set(e, true);
        e_images.push_back(basis.apply(unit));
    }
    cs.error_model = reduce_channels(lowered.channels, e_images, cs.f_width);
    cs.stats.num_mechanisms = static_cast<uint32_t>(cs.error_model.mechanisms.size());

    // Classify output components.
    uint32_t non_separated = 0;
    for (const ComponentBundle &b : bundles) {
        if (b.outputs.empty()) {
            continue;
        }
        bool direct_form = false;
        if (b.outputs.size() == 1 && b.spiders.size() == 1) {
            VertexId s = b.spiders[0];
            VertexId out_vertex = reduced.outputs()[b.outputs[0]];
            auto e = reduced.edge(s, out_vertex);
            direct_form = e && e->kind == EdgeKind::hadamard &&
                          reduced.vertex(s).phase.is_pauli() && reduced.degree(s) == 1;
        }
        if (direct_form) {
            VertexId s = b.spiders[0];
            DirectOutput d;
            d.output_index = b.outputs[0];
            d.flip_const = reduced.vertex(s).phase.exact == 4;
            d.f_bits = express_parity(reduced.vertex(s).phase.parity);
            cs.direct.push_back(std::move(d));
            continue;
        }

        // Autoregressive component. Observables are sampled ahead of any
        // detectors that failed to separate.
        AutoComponent ac;
        std::vector<uint32_t> order = b.outputs;
        if (mode == SampleMode::detectors) {
            std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t bb) {
                bool da = a < cs.num_detectors, db = bb < cs.num_detectors;
                if (da != db) {
                    return !da;  // observables first
                }
                return a < bb;
            });
            for (uint32_t o : order) {
                non_separated += o < cs.num_detectors;
            }
        }
        ac.output_indices = order;

        // Extract the component with parities rewritten into the f basis.
        uint32_t n_out = static_cast<uint32_t>(order.size());
        Diagram base;
        base.set_num_params(cs.f_width + n_out);
        std::map<VertexId, VertexId> to_new;
        for (VertexId v : b.spiders) {
            const Vertex &vd = reduced.vertex(v);
            Phase ph = vd.phase;
            ph.parity = Parity(express_parity(vd.phase.parity));
            to_new[v] = base.add_vertex(vd.kind, Layer::classical, std::move(ph));
        }
        for (uint32_t o : order) {
            to_new[reduced.outputs()[o]] = base.add_boundary_output();
        }
        for (VertexId v : b.spiders) {
            for (const auto &[w, e] : reduced.neighbors(v)) {
                if (w > v && !reduced.is_boundary(w)) {
                    base.add_edge(to_new[v], to_new[w], e.kind);
                }
                if (reduced.is_boundary(w)) {
                    base.add_edge(to_new[v], to_new[w], e.kind);
                }
            }
        }

        DecompositionPlan plan = plan_decomposition(base);
        ac.num_magic = plan.num_magic;
        ac.chi = plan.total_terms;
        cs.stats.component_terms.push_back(plan.total_terms);
        cs.stats.num_magic += plan.num_magic;
        cs.stats.chi *= plan.total_terms;

        uint32_t width = cs.f_width + n_out;
        for (int j = -1; j < static_cast<int>(n_out); j++) {
            Diagram chain = base;
            for (uint32_t pos = 0; pos < n_out; pos++) {
                VertexId bv = chain.outputs()[pos];
                if (static_cast<int>(pos) < j) {
                    project_output(chain, bv, Parity::single(cs.f_width + pos));
                } else if (static_cast<int>(pos) == j) {
                    project_output(chain, bv, Parity());
                } else {
                    trace_output(chain, bv);
                }
            }
            chain.outputs().clear();
            PhaseTermTensors tensors = tensors_for(chain, plan, width);
            if (j < 0) {
                ac.normalization = std::move(tensors);
            } else {
                ac.marginals.push_back(std::move(tensors));
            }
        }
        // One common scale per component keeps chain ratios directly
        // comparable.
        for (PhaseTermTensors &m : ac.marginals) {
            m.rebase_exponent(ac.normalization.exponent_halves);
        }
        cs.components.push_back(std::move(ac));
    }

    // Flip matrix over direct outputs.
    cs.flips.rows.assign(cs.num_outputs,
                         BitRow(static_cast<uint32_t>(cs.error_model.mechanisms.size())));
    cs.flips.columns.resize(cs.error_model.mechanisms.size());
    for (size_t m = 0; m < cs.error_model.mechanisms.size(); m++) {
        const ErrorMechanism &mech = cs.error_model.mechanisms[m];
        if (mech.joint()) {
            continue;
        }
        for (const DirectOutput &d : cs.direct) {
            uint32_t acc = 0;
            for (uint32_t f : d.f_bits) {
                acc ^= mech.f_vectors[0].get(f);
            }
            if (acc) {
                cs.flips.columns[m].push_back(d.output_index);
                cs.flips.rows[d.output_index].set(static_cast<uint32_t>(m), true);
            }
        }
    }

    uint64_t flip_total = 0;
    uint32_t singles = 0;
    for (size_t m = 0; m < cs.error_model.mechanisms.size(); m++) {
        if (!cs.error_model.mechanisms[m].joint()) {
            flip_total += cs.flips.columns[m].size();
            singles++;
        }
    }
    cs.stats.avg_flip_weight = singles ? static_cast<double>(flip_total) / singles : 0.0;
    cs.stats.rate = cs.stats.num_magic
                        ? std::log2(static_cast<double>(cs.stats.chi)) / cs.stats.num_magic
                        : 0.0;
    cs.stats.non_separated_detectors = non_separated;
    cs.stats.separation_complete = non_separated == 0;
    bool any_joint = false;
    for (const auto &m : cs.error_model.mechanisms) {
        any_joint |= m.joint();
    }
    cs.stats.pure_clifford_deterministic =
        cs.stats.num_magic == 0 && cs.components.empty() && !any_joint;
    return cs;
}

std::string export_dem(const CompiledSampler &cs) {
    if (!cs.components.empty()) {
        throw std::invalid_argument(
            "export_dem requires every detector and observable to separate");
    }
    // Noiseless output values come from the direct constants; deterministic
    // flips from probability-one sources are folded in as well.
    std::ostringstream ss;
    for (size_t i = 0; i < cs.detector_coords.size(); i++) {
        if (!cs.detector_coords[i].empty()) {
            ss << "detector(";
            for (size_t k = 0; k < cs.detector_coords[i].size(); k++) {
                ss << (k ? ", " : "") << cs.detector_coords[i][k];
            }
            ss << ") D" << i << "\n";
        }
    }

    auto flips_of = [&](const BitRow &f_vec) {
        std::vector<uint32_t> rows;
        for (const DirectOutput &d : cs.direct) {
            uint32_t acc = 0;
            for (uint32_t f : d.f_bits) {
                acc ^= f_vec.get(f);
            }
            if (acc) {
                rows.push_back(d.output_index);
            }
        }
        std::sort(rows.begin(), rows.end());
        return rows;
    };
    auto format_line = [&](double p, const std::vector<uint32_t> &rows) {
        std::ostringstream line;
        line << "error(" << p << ")";
        for (uint32_t r : rows) {
            if (r < cs.num_detectors) {
                line << " D" << r;
            } else {
                line << " L" << (r - cs.num_detectors);
            }
        }
        return line.str();
    };

    std::vector<std::pair<std::vector<uint32_t>, std::string>> lines;
    for (const ErrorMechanism &m : cs.error_model.mechanisms) {
        if (!m.joint()) {
            auto rows = flips_of(m.f_vectors[0]);
            if (!rows.empty()) {
                lines.emplace_back(rows, format_line(m.probability, rows));
            }
            continue;
        }
        // Joint groups are split one line per firing outcome; the joint
        // correlations themselves have no independent-line encoding.
        for (size_t o = 1; o < m.table.size(); o++) {
            if (m.table[o] <= 0.0) {
                continue;
            }
            BitRow combined(cs.f_width);
            for (size_t b = 0; b < m.f_vectors.size(); b++) {
                if ((o >> b) & 1) {
                    combined ^= m.f_vectors[b];
                }
            }
            auto rows = flips_of(combined);
            if (!rows.empty()) {
                lines.emplace_back(rows, format_line(m.table[o], rows));
            }
        }
    }
    std::stable_sort(lines.begin(), lines.end(),
                     [](const auto &a, const auto &b) { return a.first < b.first; });
    for (const auto &[rows, line] : lines) {
        ss << line << "\n";
    }
    return ss.str();
}

std::string format_stats(const CompiledSampler &cs) {
    std::ostringstream ss;
    ss << "chi=" << cs.stats.chi << "\n";
    ss << "rate=" << cs.stats.rate << "\n";
    ss << "num_magic=" << cs.stats.num_magic << "\n";
    ss << "n_err=" << cs.stats.num_mechanisms << "\n";
    ss << "rank=" << cs.stats.rank << "\n";
    ss << "avg_flip_weight=" << cs.stats.avg_flip_weight << "\n";
    ss << "num_detectors=" << cs.num_detectors << "\n";
    ss << "num_observables=" << cs.num_observables << "\n";
    ss << "num_outputs=" << cs.num_outputs << "\n";
    ss << "direct_outputs=" << cs.direct.size() << "\n";
    ss << "autoregressive_components=" << cs.components.size() << "\n";
    ss << "component_terms=";
    for (size_t i = 0; i < cs.stats.component_terms.size(); i++) {
        ss << (i ? "," : "") << cs.stats.component_terms[i];
    }
    ss << "\n";
    ss << "pure_clifford_deterministic=" << (cs.stats.pure_clifford_deterministic ? 1 : 0)
       << "\n";
    ss << "separation_complete=" << (cs.stats.separation_complete ? 1 : 0) << "\n";
    if (cs.stats.non_separated_detectors) {
        ss << "warning=non_separated_detectors:" << cs.stats.non_separated_detectors << "\n";
    }
    return ss.str();
}

}  // namespace zxsim
