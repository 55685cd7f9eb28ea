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

#include <cstdint>
#include <string>
#include <vector>

namespace zxsim {

enum class Op : uint8_t {
    h, s, s_dag, x, y, z, sqrt_x, sqrt_x_dag,
    cx, cz, swap_q,
    reset_z, reset_x,
    m, mx, mr, mpp,
    t, t_dag, rot_x, rot_y, rot_z, u3,
    x_error, y_error, z_error,
    depolarize1, depolarize2,
    pauli_channel_1, pauli_channel_2, correlated_error,
    detector, observable_include, tick, qubit_coords,
};

struct Target {
    enum class Kind : uint8_t { qubit, rec, pauli };
    Kind kind = Kind::qubit;
    uint32_t qubit = 0;   // qubit and pauli targets
    int32_t lookback = 0; // rec targets, negative
    char pauli = 'I';     // pauli targets: X, Y or Z
    bool joined = false;  // pauli target joined to the previous one with '*'

    static Target q(uint32_t i) { return {Kind::qubit, i, 0, 'I', false}; }
    static Target rec(int32_t lb) { return {Kind::rec, 0, lb, 'I', false}; }
    static Target p(char pauli, uint32_t i, bool joined) {
        return {Kind::pauli, i, 0, pauli, joined};
    }
    bool operator==(const Target &o) const = default;
};

struct Instruction {
    Op op;
    std::vector<double> args;
    std::vector<Target> targets;
    bool operator==(const Instruction &o) const = default;
};

struct DetectorDecl {
    std::vector<uint32_t> measurements;  // absolute indices
    std::vector<double> coords;
    bool operator==(const DetectorDecl &o) const = default;
};

/// Normalized circuit: REPEAT blocks expanded, detector/observable record
/// references resolved to absolute measurement indices.
struct Circuit {
    std::vector<Instruction> instructions;
    uint32_t num_qubits = 0;
    uint32_t num_measurements = 0;
    std::vector<DetectorDecl> detectors;
    std::vector<std::vector<uint32_t>> observables;

    bool operator==(const Circuit &o) const;
    std::string str() const;
};

struct CircuitStats {
    uint64_t num_gates = 0;
    uint64_t num_magic = 0;
    uint64_t num_measurements = 0;
    uint64_t num_error_locations = 0;
    uint64_t num_detectors = 0;
    uint64_t num_observables = 0;
};

/// Parses the textual circuit format. Throws std::invalid_argument with a
/// line-numbered message on any malformed input.
Circuit parse_circuit(const std::string &text);

CircuitStats circuit_stats(const Circuit &c);

const char *op_name(Op op);

}  // namespace zxsim
