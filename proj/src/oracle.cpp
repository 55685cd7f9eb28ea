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

#include "zxsim/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zxsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBranchCutoff = 1e-18;

using Vec = std::vector<cdouble>;
using Mat2 = std::array<cdouble, 4>;  // row major

Mat2 matmul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 gate_matrix(Op op, const std::vector<double> &args) {
    const double s = 1.0 / std::sqrt(2.0);
    const cdouble i{0.0, 1.0};
    switch (op) {
        case Op::h: return {s, s, s, -s};
        case Op::s: return {1, 0, 0, i};
        case Op::s_dag: return {1, 0, 0, -i};
        case Op::x: return {0, 1, 1, 0};
        case Op::y: return {0, -i, i, 0};
        case Op::z: return {1, 0, 0, -1};
        case Op::sqrt_x: return {(1.0 + i) * 0.5, (1.0 - i) * 0.5, (1.0 - i) * 0.5, (1.0 + i) * 0.5};
        case Op::sqrt_x_dag:
            return {(1.0 - i) * 0.5, (1.0 + i) * 0.5, (1.0 + i) * 0.5, (1.0 - i) * 0.5};
        case Op::t: return {1, 0, 0, std::polar(1.0, kPi / 4)};
        case Op::t_dag: return {1, 0, 0, std::polar(1.0, -kPi / 4)};
        case Op::rot_z: {
            double th = args[0] * kPi;
            return {std::polar(1.0, -th / 2), 0, 0, std::polar(1.0, th / 2)};
        }
        case Op::rot_x: {
            double th = args[0] * kPi;
            cdouble c = std::cos(th / 2), ms = cdouble(0, -std::sin(th / 2));
            return {c, ms, ms, c};
        }
        case Op::rot_y: {
            double th = args[0] * kPi;
            double c = std::cos(th / 2), sn = std::sin(th / 2);
            return {c, -sn, sn, c};
        }
        case Op::u3: {
            double th = args[0] * kPi, ph = args[1] * kPi, la = args[2] * kPi;
            double c = std::cos(th / 2), sn = std::sin(th / 2);
            return {c, -std::polar(sn, la), std::polar(sn, ph), std::polar(c, ph + la)};
        }
        default:
            throw std::logic_error("not a single-qubit unitary");
    }
}

void apply_1q(Vec &psi, uint32_t q, const Mat2 &m) {
    size_t stride = size_t(1) << q;
    for (size_t base = 0; base < psi.size(); base += 2 * stride) {
        for (size_t k = 0; k < stride; k++) {
            cdouble a = psi[base + k];
            cdouble b = psi[base + k + stride];
            psi[base + k] = m[0] * a + m[1] * b;
            psi[base + k + stride] = m[2] * a + m[3] * b;
        }
    }
}

void apply_pauli(Vec &psi, uint32_t q, char p) {
    static const cdouble i{0.0, 1.0};
    switch (p) {
        case 'X': apply_1q(psi, q, {0, 1, 1, 0}); break;
        case 'Y': apply_1q(psi, q, {0, -i, i, 0}); break;
        case 'Z': apply_1q(psi, q, {1, 0, 0, -1}); break;
        default: break;
    }
}

void apply_cx(Vec &psi, uint32_t c, uint32_t t) {
    size_t cm = size_t(1) << c, tm = size_t(1) << t;
    for (size_t idx = 0; idx < psi.size(); idx++) {
        if ((idx & cm) && !(idx & tm)) {
            std::swap(psi[idx], psi[idx | tm]);
        }
    }
}

void apply_cz(Vec &psi, uint32_t a, uint32_t b) {
    size_t am = size_t(1) << a, bm = size_t(1) << b;
    for (size_t idx = 0; idx < psi.size(); idx++) {
        if ((idx & am) && (idx & bm)) {
            psi[idx] = -psi[idx];
        }
    }
}

void apply_swap(Vec &psi, uint32_t a, uint32_t b) {
    apply_cx(psi, a, b);
    apply_cx(psi, b, a);
    apply_cx(psi, a, b);
}

// Probability that qubit q reads 0 in the Z basis.
double prob_zero(const Vec &psi, uint32_t q) {
    size_t qm = size_t(1) << q;
    double p = 0;
    for (size_t idx = 0; idx < psi.size(); idx++) {
        if (!(idx & qm)) {
            p += std::norm(psi[idx]);
        }
    }
    return p;
}

void project(Vec &psi, uint32_t q, bool one, double norm_sq) {
    size_t qm = size_t(1) << q;
    double inv = 1.0 / std::sqrt(norm_sq);
    for (size_t idx = 0; idx < psi.size(); idx++) {
        bool bit = (idx & qm) != 0;
        psi[idx] = (bit == one) ? psi[idx] * inv : cdouble{};
    }
}

struct KahanSum {
    double value = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = value + y;
        carry = (t - value) - y;
        value = t;
    }
};

// Flattened program steps with channel groups resolved to concrete Pauli
// actions per bit, mirroring the channel bit conventions.
struct Step {
    enum class Kind { unitary_1q, cx, cz, swap_q, classical_pauli, measure, reset, channel, mpp };
    Kind kind;
    Op op = Op::tick;
    std::vector<double> args;
    uint32_t q0 = 0, q1 = 0;
    bool x_basis = false;     // measure/reset
    bool destructive = false; // measure
    uint32_t rec_index = 0;   // classical_pauli control
    char pauli = 'I';         // classical_pauli kind
    std::vector<std::vector<BitAction>> bit_actions;  // channel
    std::vector<double> table;                        // channel
    std::vector<std::pair<uint32_t, char>> product;   // mpp
};

struct Program {
    std::vector<Step> steps;
    uint32_t num_qubits = 0;
    uint32_t num_measurements = 0;
    size_t num_patterns = 1;
};

Program flatten(const Circuit &c) {
    Program prog;
    prog.num_qubits = std::max(c.num_qubits, 1u);
    prog.num_measurements = c.num_measurements;
    uint32_t meas = 0;
    for (const Instruction &inst : c.instructions) {
        switch (inst.op) {
            case Op::h:
            case Op::s:
            case Op::s_dag:
            case Op::x:
            case Op::y:
            case Op::z:
            case Op::sqrt_x:
            case Op::sqrt_x_dag:
            case Op::t:
            case Op::t_dag:
            case Op::rot_x:
            case Op::rot_y:
            case Op::rot_z:
            case Op::u3:
                for (const Target &t : inst.targets) {
                    Step s{};
                    s.kind = Step::Kind::unitary_1q;
                    s.op = inst.op;
                    s.args = inst.args;
                    s.q0 = t.qubit;
                    prog.steps.push_back(std::move(s));
                }
                break;
            case Op::cx:
            case Op::cz:
                for (size_t i = 0; i < inst.targets.size(); i += 2) {
                    Target a = inst.targets[i], b = inst.targets[i + 1];
                    if (inst.op == Op::cz && b.kind == Target::Kind::rec) {
                        std::swap(a, b);
                    }
                    Step s{};
                    if (a.kind == Target::Kind::rec) {
                        s.kind = Step::Kind::classical_pauli;
                        s.rec_index = meas - static_cast<uint32_t>(-a.lookback);
                        s.q0 = b.qubit;
                        s.pauli = inst.op == Op::cx ? 'X' : 'Z';
                    } else {
                        s.kind = inst.op == Op::cx ? Step::Kind::cx : Step::Kind::cz;
                        s.q0 = a.qubit;
                        s.q1 = b.qubit;
                    }
                    prog.steps.push_back(std::move(s));
                }
                break;
            case Op::swap_q:
                for (size_t i = 0; i < inst.targets.size(); i += 2) {
                    Step s{};
                    s.kind = Step::Kind::swap_q;
                    s.q0 = inst.targets[i].qubit;
                    s.q1 = inst.targets[i + 1].qubit;
                    prog.steps.push_back(std::move(s));
                }
                break;
            case Op::reset_z:
            case Op::reset_x:
                for (const Target &t : inst.targets) {
                    Step s{};
                    s.kind = Step::Kind::reset;
                    s.q0 = t.qubit;
                    s.x_basis = inst.op == Op::reset_x;
                    prog.steps.push_back(std::move(s));
                }
                break;
            case Op::m:
            case Op::mx:
            case Op::mr:
                for (const Target &t : inst.targets) {
                    Step s{};
                    s.kind = Step::Kind::measure;
                    s.q0 = t.qubit;
                    s.x_basis = inst.op == Op::mx;
                    s.destructive = inst.op == Op::mr;
                    prog.steps.push_back(std::move(s));
                    meas++;
                }
                break;
            case Op::mpp: {
                size_t i = 0;
                while (i < inst.targets.size()) {
                    size_t j = i + 1;
                    while (j < inst.targets.size() && inst.targets[j].joined) {
                        j++;
                    }
                    Step s{};
                    s.kind = Step::Kind::mpp;
                    for (size_t k = i; k < j; k++) {
                        s.product.emplace_back(inst.targets[k].qubit, inst.targets[k].pauli);
                    }
                    prog.steps.push_back(std::move(s));
                    meas++;
                    i = j;
                }
                break;
            }
            case Op::x_error:
            case Op::y_error:
            case Op::z_error: {
                char p = inst.op == Op::x_error ? 'X' : (inst.op == Op::y_error ? 'Y' : 'Z');
                for (const Target &t : inst.targets) {
                    Step s{};
                    s.kind = Step::Kind::channel;
                    s.table = channel_table(inst.op, inst.args);
                    s.bit_actions = {{BitAction{t.qubit, p}}};
                    prog.num_patterns *= s.table.size();
                    prog.steps.push_back(std::move(s));
                }
                break;
            }
            case Op::depolarize1:
            case Op::pauli_channel_1:
                for (const Target &t : inst.targets) {
                    Step s{};
                    s.kind = Step::Kind::channel;
                    s.table = channel_table(inst.op, inst.args);
                    s.bit_actions = {{BitAction{t.qubit, 'X'}}, {BitAction{t.qubit, 'Z'}}};
                    prog.num_patterns *= s.table.size();
                    prog.steps.push_back(std::move(s));
                }
                break;
            case Op::depolarize2:
            case Op::pauli_channel_2:
                for (size_t i = 0; i < inst.targets.size(); i += 2) {
                    Step s{};
                    s.kind = Step::Kind::channel;
                    s.table = channel_table(inst.op, inst.args);
                    uint32_t a = inst.targets[i].qubit, b = inst.targets[i + 1].qubit;
                    s.bit_actions = {{BitAction{a, 'X'}},
                                     {BitAction{a, 'Z'}},
                                     {BitAction{b, 'X'}},
                                     {BitAction{b, 'Z'}}};
                    prog.num_patterns *= s.table.size();
                    prog.steps.push_back(std::move(s));
                }
                break;
            case Op::correlated_error: {
                Step s{};
                s.kind = Step::Kind::channel;
                s.table = channel_table(inst.op, inst.args);
                std::vector<BitAction> acts;
                for (const Target &t : inst.targets) {
                    acts.push_back(BitAction{t.qubit, t.pauli});
                }
                s.bit_actions = {acts};
                prog.num_patterns *= s.table.size();
                prog.steps.push_back(std::move(s));
                break;
            }
            case Op::detector:
            case Op::observable_include:
            case Op::tick:
            case Op::qubit_coords:
                break;
        }
    }
    return prog;
}

struct Accumulator {
    std::map<uint64_t, KahanSum> sums;
    const Circuit &circuit;
    SampleMode mode;

    void finish_branch(const std::vector<bool> &record, double prob) {
        uint64_t key = 0;
        if (mode == SampleMode::measurements) {
            for (size_t i = 0; i < record.size(); i++) {
                key |= uint64_t(record[i]) << i;
            }
        } else {
            size_t out = 0;
            for (const auto &det : circuit.detectors) {
                bool v = false;
                for (uint32_t m : det.measurements) {
                    v ^= record[m];
                }
                key |= uint64_t(v) << out++;
            }
            for (const auto &obs : circuit.observables) {
                bool v = false;
                for (uint32_t m : obs) {
                    v ^= record[m];
                }
                key |= uint64_t(v) << out++;
            }
        }
        sums[key].add(prob);
    }
};

struct BranchRunner {
    const Program &prog;
    const std::vector<size_t> &pattern;  // per-channel-step table index
    Accumulator &acc;

    void run(Vec psi, size_t step_idx, std::vector<bool> record, double weight,
             size_t channel_idx) {
        for (size_t i = step_idx; i < prog.steps.size(); i++) {
            const Step &s = prog.steps[i];
            switch (s.kind) {
                case Step::Kind::unitary_1q:
                    apply_1q(psi, s.q0, gate_matrix(s.op, s.args));
                    break;
                case Step::Kind::cx:
                    apply_cx(psi, s.q0, s.q1);
                    break;
                case Step::Kind::cz:
                    apply_cz(psi, s.q0, s.q1);
                    break;
                case Step::Kind::swap_q:
                    apply_swap(psi, s.q0, s.q1);
                    break;
                case Step::Kind::classical_pauli:
                    if (record[s.rec_index]) {
                        apply_pauli(psi, s.q0, s.pauli);
                    }
                    break;
                case Step::Kind::channel: {
                    size_t bits = pattern[channel_idx++];
                    for (size_t b = 0; b < s.bit_actions.size(); b++) {
                        if ((bits >> b) & 1) {
                            for (const BitAction &a : s.bit_actions[b]) {
                                apply_pauli(psi, a.qubit, a.pauli);
                            }
                        }
                    }
                    break;
                }
                case Step::Kind::reset: {
                    if (s.x_basis) {
                        apply_1q(psi, s.q0, gate_matrix(Op::h, {}));
                    }
                    double p0 = prob_zero(psi, s.q0);
                    for (int outcome = 0; outcome < 2; outcome++) {
                        double p = outcome ? 1.0 - p0 : p0;
                        if (p * weight < kBranchCutoff) {
                            continue;
                        }
                        Vec branch = psi;
                        project(branch, s.q0, outcome, p);
                        if (outcome) {
                            apply_pauli(branch, s.q0, 'X');
                        }
                        if (s.x_basis) {
                            apply_1q(branch, s.q0, gate_matrix(Op::h, {}));
                        }
                        run(std::move(branch), i + 1, record, weight * p, channel_idx);
                    }
                    return;
                }
                case Step::Kind::measure: {
                    if (s.x_basis) {
                        apply_1q(psi, s.q0, gate_matrix(Op::h, {}));
                    }
                    double p0 = prob_zero(psi, s.q0);
                    for (int outcome = 0; outcome < 2; outcome++) {
                        double p = outcome ? 1.0 - p0 : p0;
                        if (p * weight < kBranchCutoff) {
                            continue;
                        }
                        Vec branch = psi;
                        project(branch, s.q0, outcome, p);
                        if (s.destructive && outcome) {
                            apply_pauli(branch, s.q0, 'X');  // reset back to |0>
                        }
                        if (s.x_basis && !s.destructive) {
                            apply_1q(branch, s.q0, gate_matrix(Op::h, {}));
                        }
                        std::vector<bool> rec = record;
                        rec.push_back(outcome != 0);
                        run(std::move(branch), i + 1, std::move(rec), weight * p, channel_idx);
                    }
                    return;
                }
                case Step::Kind::mpp: {
                    Vec rotated = psi;
                    // P|psi> via per-factor Pauli application.
                    for (const auto &[q, p] : s.product) {
                        apply_pauli(rotated, q, p);
                    }
                    // p(+1) = (1 + Re<psi|P|psi>) / 2
                    double inner = 0;
                    for (size_t k = 0; k < psi.size(); k++) {
                        inner += (std::conj(psi[k]) * rotated[k]).real();
                    }
                    for (int outcome = 0; outcome < 2; outcome++) {
                        double sign = outcome ? -1.0 : 1.0;
                        double p = (1.0 + sign * inner) / 2.0;
                        if (p * weight < kBranchCutoff) {
                            continue;
                        }
                        Vec branch(psi.size());
                        double inv = 0.5 / std::sqrt(p);
                        for (size_t k = 0; k < psi.size(); k++) {
                            branch[k] = (psi[k] + sign * rotated[k]) * inv;
                        }
                        std::vector<bool> rec = record;
                        rec.push_back(outcome != 0);
                        run(std::move(branch), i + 1, std::move(rec), weight * p, channel_idx);
                    }
                    return;
                }
            }
        }
        acc.finish_branch(record, weight);
    }
};

}  // namespace

OutcomeDistribution oracle_distribution(const Circuit &c, SampleMode mode) {
    if (c.num_qubits > 12) {
        throw std::invalid_argument("oracle: too many qubits");
    }
    if (c.num_measurements > 16) {
        throw std::invalid_argument("oracle: too many measurements");
    }
    Program prog = flatten(c);
    if (prog.num_patterns > (size_t(1) << 20)) {
        throw std::invalid_argument("oracle: channel entropy guard exceeded");
    }

    Accumulator acc{{}, c, mode};
    std::vector<const Step *> channels;
    for (const Step &s : prog.steps) {
        if (s.kind == Step::Kind::channel) {
            channels.push_back(&s);
        }
    }

    std::vector<size_t> pattern(channels.size(), 0);
    for (size_t n = 0; n < prog.num_patterns; n++) {
        // Mixed-radix decode of n into per-channel outcomes, channel-major.
        size_t rem = n;
        double pattern_prob = 1.0;
        for (size_t ci = 0; ci < channels.size(); ci++) {
            size_t radix = channels[ci]->table.size();
            pattern[ci] = rem % radix;
            rem /= radix;
            pattern_prob *= channels[ci]->table[pattern[ci]];
        }
        if (pattern_prob < kBranchCutoff) {
            continue;
        }
        Vec psi(size_t(1) << prog.num_qubits, cdouble{});
        psi[0] = 1.0;
        BranchRunner{prog, pattern, acc}.run(std::move(psi), 0, {}, pattern_prob, 0);
    }

    OutcomeDistribution dist;
    dist.num_outputs = mode == SampleMode::measurements
                           ? c.num_measurements
                           : static_cast<uint32_t>(c.detectors.size() + c.observables.size());
    for (const auto &[key, sum] : acc.sums) {
        if (sum.value > 0) {
            dist.probs[key] = sum.value;
        }
    }
    return dist;
}

cdouble oracle_zx_value(const Diagram &d, const std::vector<bool> &assignment) {
    DenseTensor t = contract_reverse_order(d, assignment);
    if (t.data.size() != 1) {
        throw std::invalid_argument("oracle_zx_value requires a closed diagram");
    }
    return t.data[0];
}

}  // namespace zxsim
