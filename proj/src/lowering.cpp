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

#include "zxsim/lowering.hpp"

#include <numbers>
#include <stdexcept>

namespace zxsim {

namespace {
constexpr double kPi = std::numbers::pi;

// (x, z) bit pair for a Pauli letter.
std::pair<int, int> pauli_bits(char p) {
    switch (p) {
        case 'X': return {1, 0};
        case 'Y': return {1, 1};
        case 'Z': return {0, 1};
        default: return {0, 0};
    }
}

struct Wire {
    VertexId end = 0;
    bool live = false;
    bool pending_h = false;
};

struct Lowerer {
    const Circuit &circuit;
    SampleMode mode;
    LoweredProgram out;
    std::vector<Wire> wires;
    std::vector<VertexId> meas_vertex;  // absolute measurement index -> spider
    uint32_t meas_count = 0;

    Diagram &dia() { return out.diagram; }

    Lowerer(const Circuit &c, SampleMode m) : circuit(c), mode(m) {
        out.mode = m;
        wires.resize(c.num_qubits);
    }

    // |0> preparation is an X(0) pendant, |+> a Z(0) pendant; both normalized.
    void fresh_wire(uint32_t q, VKind kind) {
        VertexId v = dia().add_vertex(kind, Layer::quantum, Phase(0));
        dia().scalar().mul_sqrt2_pow(-2);
        wires[q] = Wire{v, true, false};
    }

    VertexId wire_end(uint32_t q, bool &pending_h) {
        if (!wires[q].live) {
            fresh_wire(q, VKind::x_spider);
        }
        pending_h = wires[q].pending_h;
        return wires[q].end;
    }

    // Append a spider to a qubit wire, consuming the pending Hadamard.
    VertexId append(uint32_t q, VKind kind, Phase phase, bool extra_h = false) {
        bool pending;
        VertexId prev = wire_end(q, pending);
        VertexId v = dia().add_vertex(kind, Layer::quantum, std::move(phase));
        EdgeKind k = (pending ^ extra_h) ? EdgeKind::hadamard : EdgeKind::plain;
        dia().add_edge(prev, v, k, Layer::quantum);
        wires[q] = Wire{v, true, false};
        return v;
    }

    void rot_z(uint32_t q, Phase p) { append(q, VKind::z_spider, std::move(p)); }
    void rot_x(uint32_t q, Phase p) { append(q, VKind::x_spider, std::move(p)); }

    // Measurement spider; its classical side copies to every consumer.
    VertexId measure(uint32_t q, bool x_basis, bool destructive) {
        bool pending;
        VertexId prev = wire_end(q, pending);
        VertexId m = dia().add_vertex(VKind::z_spider, Layer::classical, Phase(0));
        dia().add_edge(prev, m, (pending ^ x_basis) ? EdgeKind::hadamard : EdgeKind::plain,
                       Layer::quantum);
        meas_vertex.push_back(m);
        meas_count++;
        if (destructive) {
            wires[q].live = false;
        } else {
            wires[q] = Wire{m, true, x_basis};
        }
        return m;
    }

    void discard(uint32_t q) {
        if (!wires[q].live) {
            return;
        }
        bool pending;
        VertexId prev = wire_end(q, pending);
        VertexId t = dia().add_vertex(VKind::z_spider, Layer::classical, Phase(0));
        dia().add_edge(prev, t, pending ? EdgeKind::hadamard : EdgeKind::plain, Layer::quantum);
        wires[q].live = false;
    }

    uint32_t resolve_rec(int32_t lookback) const {
        return meas_count - static_cast<uint32_t>(-lookback);
    }

    void add_channel(Op op, const std::vector<double> &args,
                     std::vector<std::vector<BitAction>> actions) {
        ChannelGroup g;
        g.table = channel_table(op, args);
        for (const auto &bit_actions : actions) {
            uint32_t p = dia().fresh_param();
            g.param_indices.push_back(p);
            Parity e = Parity::single(p);
            for (const BitAction &a : bit_actions) {
                auto [x, z] = pauli_bits(a.pauli);
                if (x) {
                    append(a.qubit, VKind::x_spider, Phase::pauli(e));
                }
                if (z) {
                    append(a.qubit, VKind::z_spider, Phase::pauli(e));
                }
            }
        }
        g.actions = std::move(actions);
        out.channels.push_back(std::move(g));
    }

    // XOR of measurement bits feeding one classical output.
    void xor_output(const std::vector<uint32_t> &measurements) {
        VertexId x = dia().add_vertex(VKind::x_spider, Layer::classical, Phase(0));
        for (uint32_t m : measurements) {
            dia().add_edge(x, meas_vertex[m], EdgeKind::plain, Layer::classical);
        }
        dia().scalar().mul_sqrt2_pow(static_cast<int64_t>(measurements.size()) - 1);
        VertexId b = dia().add_boundary_output(Layer::classical);
        dia().add_edge(x, b, EdgeKind::plain, Layer::classical);
    }

    void mpp(const Instruction &inst) {
        size_t i = 0;
        while (i < inst.targets.size()) {
            size_t j = i + 1;
            while (j < inst.targets.size() && inst.targets[j].joined) {
                j++;
            }
            // Ancilla chain: |0> prep, one parity coupling per factor,
            // destructive readout.
            VertexId anc = dia().add_vertex(VKind::x_spider, Layer::quantum, Phase(0));
            dia().scalar().mul_sqrt2_pow(-2);
            for (size_t k = i; k < j; k++) {
                const Target &t = inst.targets[k];
                uint32_t q = t.qubit;
                if (t.pauli == 'Y') {
                    rot_z(q, Phase(6));  // S_DAG
                }
                bool x_basis = (t.pauli != 'Z');
                VertexId coupler = append(q, VKind::z_spider, Phase(0), x_basis);
                wires[q].pending_h = x_basis;
                VertexId link = dia().add_vertex(VKind::x_spider, Layer::quantum, Phase(0));
                dia().add_edge(anc, link, EdgeKind::plain, Layer::quantum);
                dia().add_edge(coupler, link, EdgeKind::plain, Layer::quantum);
                dia().scalar().mul_sqrt2_pow(2);
                anc = link;
                if (t.pauli == 'Y') {
                    rot_z(q, Phase(2));  // S
                }
            }
            VertexId m = dia().add_vertex(VKind::z_spider, Layer::classical, Phase(0));
            dia().add_edge(anc, m, EdgeKind::plain, Layer::quantum);
            meas_vertex.push_back(m);
            meas_count++;
            i = j;
        }
    }

    void run() {
        for (const Instruction &inst : circuit.instructions) {
            apply(inst);
        }
        for (uint32_t q = 0; q < wires.size(); q++) {
            discard(q);
        }
        if (mode == SampleMode::detectors) {
            for (const auto &det : circuit.detectors) {
                xor_output(det.measurements);
            }
            for (const auto &obs : circuit.observables) {
                xor_output(obs);
            }
            out.num_detectors = static_cast<uint32_t>(circuit.detectors.size());
            out.num_observables = static_cast<uint32_t>(circuit.observables.size());
        } else {
            for (VertexId m : meas_vertex) {
                VertexId b = dia().add_boundary_output(Layer::classical);
                dia().add_edge(m, b, EdgeKind::plain, Layer::classical);
            }
        }
        out.e_param_count = dia().num_params();
    }

    void apply(const Instruction &inst) {
        switch (inst.op) {
            case Op::h:
                for (const Target &t : inst.targets) {
                    bool pending;
                    wire_end(t.qubit, pending);
                    wires[t.qubit].pending_h = !pending;
                }
                break;
            case Op::s:
                for (const Target &t : inst.targets) rot_z(t.qubit, Phase(2));
                break;
            case Op::s_dag:
                for (const Target &t : inst.targets) rot_z(t.qubit, Phase(6));
                break;
            case Op::z:
                for (const Target &t : inst.targets) rot_z(t.qubit, Phase(4));
                break;
            case Op::x:
                for (const Target &t : inst.targets) rot_x(t.qubit, Phase(4));
                break;
            case Op::y:
                for (const Target &t : inst.targets) {
                    rot_z(t.qubit, Phase(4));
                    rot_x(t.qubit, Phase(4));
                }
                break;
            case Op::sqrt_x:
                for (const Target &t : inst.targets) rot_x(t.qubit, Phase(2));
                break;
            case Op::sqrt_x_dag:
                for (const Target &t : inst.targets) rot_x(t.qubit, Phase(6));
                break;
            case Op::t:
                for (const Target &t : inst.targets) rot_z(t.qubit, Phase(1));
                break;
            case Op::t_dag:
                for (const Target &t : inst.targets) rot_z(t.qubit, Phase(7));
                break;
            case Op::rot_z:
                for (const Target &t : inst.targets) {
                    rot_z(t.qubit, Phase::from_radians(inst.args[0] * kPi));
                }
                break;
            case Op::rot_x:
                for (const Target &t : inst.targets) {
                    rot_x(t.qubit, Phase::from_radians(inst.args[0] * kPi));
                }
                break;
            case Op::rot_y:
                for (const Target &t : inst.targets) {
                    rot_z(t.qubit, Phase(6));
                    rot_x(t.qubit, Phase::from_radians(inst.args[0] * kPi));
                    rot_z(t.qubit, Phase(2));
                }
                break;
            case Op::u3:
                for (const Target &t : inst.targets) {
                    rot_z(t.qubit, Phase::from_radians(inst.args[2] * kPi - kPi / 2));
                    rot_x(t.qubit, Phase::from_radians(inst.args[0] * kPi));
                    rot_z(t.qubit, Phase::from_radians(inst.args[1] * kPi + kPi / 2));
                }
                break;
            case Op::cx:
                for (size_t i = 0; i < inst.targets.size(); i += 2) {
                    const Target &c = inst.targets[i], &t = inst.targets[i + 1];
                    if (c.kind == Target::Kind::rec) {
                        // Record-controlled X: the classical wire drives the flip.
                        VertexId flip = append(t.qubit, VKind::x_spider, Phase(0));
                        VertexId m = meas_vertex[resolve_rec(c.lookback)];
                        dia().add_edge(flip, m, EdgeKind::plain, Layer::classical);
                        dia().scalar().mul_sqrt2_pow(2);
                    } else {
                        VertexId ctrl = append(c.qubit, VKind::z_spider, Phase(0));
                        VertexId tgt = append(t.qubit, VKind::x_spider, Phase(0));
                        dia().add_edge(ctrl, tgt, EdgeKind::plain, Layer::quantum);
                        dia().scalar().mul_sqrt2_pow(2);
                    }
                }
                break;
            case Op::cz:
                for (size_t i = 0; i < inst.targets.size(); i += 2) {
                    Target a = inst.targets[i], b = inst.targets[i + 1];
                    if (b.kind == Target::Kind::rec) {
                        std::swap(a, b);
                    }
                    if (a.kind == Target::Kind::rec) {
                        VertexId flip = append(b.qubit, VKind::z_spider, Phase(0));
                        VertexId m = meas_vertex[resolve_rec(a.lookback)];
                        dia().add_edge(flip, m, EdgeKind::hadamard, Layer::classical);
                        dia().scalar().mul_sqrt2_pow(2);
                    } else {
                        VertexId u = append(a.qubit, VKind::z_spider, Phase(0));
                        VertexId v = append(b.qubit, VKind::z_spider, Phase(0));
                        dia().add_edge(u, v, EdgeKind::hadamard, Layer::quantum);
                        dia().scalar().mul_sqrt2_pow(2);
                    }
                }
                break;
            case Op::swap_q:
                for (size_t i = 0; i < inst.targets.size(); i += 2) {
                    uint32_t a = inst.targets[i].qubit, b = inst.targets[i + 1].qubit;
                    bool pa, pb;
                    wire_end(a, pa);
                    wire_end(b, pb);
                    std::swap(wires[a], wires[b]);
                }
                break;
            case Op::reset_z:
                for (const Target &t : inst.targets) {
                    discard(t.qubit);
                    fresh_wire(t.qubit, VKind::x_spider);
                }
                break;
            case Op::reset_x:
                for (const Target &t : inst.targets) {
                    discard(t.qubit);
                    fresh_wire(t.qubit, VKind::z_spider);
                }
                break;
            case Op::m:
                for (const Target &t : inst.targets) measure(t.qubit, false, false);
                break;
            case Op::mx:
                for (const Target &t : inst.targets) measure(t.qubit, true, false);
                break;
            case Op::mr:
                for (const Target &t : inst.targets) {
                    measure(t.qubit, false, true);
                    fresh_wire(t.qubit, VKind::x_spider);
                }
                break;
            case Op::mpp:
                mpp(inst);
                break;
            case Op::x_error:
            case Op::y_error:
            case Op::z_error: {
                char p = inst.op == Op::x_error ? 'X' : (inst.op == Op::y_error ? 'Y' : 'Z');
                for (const Target &t : inst.targets) {
                    add_channel(inst.op, inst.args, {{BitAction{t.qubit, p}}});
                }
                break;
            }
            case Op::depolarize1:
            case Op::pauli_channel_1:
                for (const Target &t : inst.targets) {
                    add_channel(inst.op, inst.args,
                                {{BitAction{t.qubit, 'X'}}, {BitAction{t.qubit, 'Z'}}});
                }
                break;
            case Op::depolarize2:
            case Op::pauli_channel_2:
                for (size_t i = 0; i < inst.targets.size(); i += 2) {
                    uint32_t a = inst.targets[i].qubit, b = inst.targets[i + 1].qubit;
                    add_channel(inst.op, inst.args,
                                {{BitAction{a, 'X'}},
                                 {BitAction{a, 'Z'}},
                                 {BitAction{b, 'X'}},
                                 {BitAction{b, 'Z'}}});
                }
                break;
            case Op::correlated_error: {
                std::vector<BitAction> acts;
                for (const Target &t : inst.targets) {
                    acts.push_back(BitAction{t.qubit, t.pauli});
                }
                add_channel(inst.op, inst.args, {acts});
                break;
            }
            case Op::detector:
            case Op::observable_include:
                // Gadgets are built at the end from the resolved circuit lists.
                break;
            case Op::tick:
            case Op::qubit_coords:
                break;
        }
    }
};

}  // namespace

std::vector<double> channel_table(Op op, const std::vector<double> &args) {
    switch (op) {
        case Op::x_error:
        case Op::y_error:
        case Op::z_error:
        case Op::correlated_error:
            return {1.0 - args[0], args[0]};
        case Op::depolarize1: {
            double p = args[0];
            // (x, z) bits: X = index 1, Z = index 2, Y = index 3.
            return {1.0 - p, p / 3, p / 3, p / 3};
        }
        case Op::pauli_channel_1: {
            double px = args[0], py = args[1], pz = args[2];
            return {1.0 - px - py - pz, px, pz, py};
        }
        case Op::depolarize2: {
            double p = args[0];
            std::vector<double> t(16, p / 15);
            t[0] = 1.0 - p;
            return t;
        }
        case Op::pauli_channel_2: {
            // Args in IX, IY, IZ, XI, XX ... ZZ order; bits little-endian
            // (xa, za, xb, zb).
            std::vector<double> t(16, 0.0);
            const char letters[4] = {'I', 'X', 'Y', 'Z'};
            double rest = 1.0;
            size_t arg = 0;
            for (int first = 0; first < 4; first++) {
                for (int second = 0; second < 4; second++) {
                    if (first == 0 && second == 0) {
                        continue;
                    }
                    auto [xa, za] = pauli_bits(letters[first]);
                    auto [xb, zb] = pauli_bits(letters[second]);
                    size_t idx = static_cast<size_t>(xa) | (static_cast<size_t>(za) << 1) |
                                 (static_cast<size_t>(xb) << 2) | (static_cast<size_t>(zb) << 3);
                    t[idx] = args[arg];
                    rest -= args[arg];
                    arg++;
                }
            }
            t[0] = rest;
            return t;
        }
        default:
            throw std::invalid_argument("not a noise instruction");
    }
}

LoweredProgram lower(const Circuit &c, SampleMode mode) {
    Lowerer lw(c, mode);
    lw.run();
    return lw.out;
}

}  // namespace zxsim
