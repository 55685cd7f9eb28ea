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

#include "zxsim/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zxsim {

namespace {

struct OpInfo {
    Op op;
    const char *name;
    int min_args;
    int max_args;       // -1: unbounded
    int target_group;   // targets consumed per application; 0: free-form
    bool is_noise;
    bool is_rotation;
};

const OpInfo kOps[] = {
    {Op::h, "H", 0, 0, 1, false, false},
    {Op::s, "S", 0, 0, 1, false, false},
    {Op::s_dag, "S_DAG", 0, 0, 1, false, false},
    {Op::x, "X", 0, 0, 1, false, false},
    {Op::y, "Y", 0, 0, 1, false, false},
    {Op::z, "Z", 0, 0, 1, false, false},
    {Op::sqrt_x, "SQRT_X", 0, 0, 1, false, false},
    {Op::sqrt_x_dag, "SQRT_X_DAG", 0, 0, 1, false, false},
    {Op::cx, "CX", 0, 0, 2, false, false},
    {Op::cz, "CZ", 0, 0, 2, false, false},
    {Op::swap_q, "SWAP", 0, 0, 2, false, false},
    {Op::reset_z, "R", 0, 0, 1, false, false},
    {Op::reset_x, "RX", 0, 0, 1, false, false},
    {Op::m, "M", 0, 0, 1, false, false},
    {Op::mx, "MX", 0, 0, 1, false, false},
    {Op::mr, "MR", 0, 0, 1, false, false},
    {Op::mpp, "MPP", 0, 0, 0, false, false},
    {Op::t, "T", 0, 0, 1, false, false},
    {Op::t_dag, "T_DAG", 0, 0, 1, false, false},
    {Op::rot_x, "R_X", 1, 1, 1, false, true},
    {Op::rot_y, "R_Y", 1, 1, 1, false, true},
    {Op::rot_z, "R_Z", 1, 1, 1, false, true},
    {Op::u3, "U3", 3, 3, 1, false, true},
    {Op::x_error, "X_ERROR", 1, 1, 1, true, false},
    {Op::y_error, "Y_ERROR", 1, 1, 1, true, false},
    {Op::z_error, "Z_ERROR", 1, 1, 1, true, false},
    {Op::depolarize1, "DEPOLARIZE1", 1, 1, 1, true, false},
    {Op::depolarize2, "DEPOLARIZE2", 1, 1, 2, true, false},
    {Op::pauli_channel_1, "PAULI_CHANNEL_1", 3, 3, 1, true, false},
    {Op::pauli_channel_2, "PAULI_CHANNEL_2", 15, 15, 2, true, false},
    {Op::correlated_error, "CORRELATED_ERROR", 1, 1, 0, true, false},
    {Op::detector, "DETECTOR", 0, -1, 0, false, false},
    {Op::observable_include, "OBSERVABLE_INCLUDE", 1, 1, 0, false, false},
    {Op::tick, "TICK", 0, 0, 0, false, false},
    {Op::qubit_coords, "QUBIT_COORDS", 0, -1, 1, false, false},
};

const OpInfo *find_op(const std::string &name) {
    std::string canonical = name;
    if (canonical == "CNOT" || canonical == "ZCX") {
        canonical = "CX";
    } else if (canonical == "E") {
        canonical = "CORRELATED_ERROR";
    }
    for (const auto &info : kOps) {
        if (canonical == info.name) {
            return &info;
        }
    }
    return nullptr;
}

const OpInfo &info_for(Op op) {
    for (const auto &info : kOps) {
        if (info.op == op) {
            return info;
        }
    }
    throw std::logic_error("unknown op");
}

[[noreturn]] void fail(size_t line_no, const std::string &msg) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
}

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string &tok, size_t line_no) {
    try {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) {
            fail(line_no, "malformed number '" + tok + "'");
        }
        return v;
    } catch (const std::invalid_argument &) {
        fail(line_no, "malformed number '" + tok + "'");
    } catch (const std::out_of_range &) {
        fail(line_no, "number out of range '" + tok + "'");
    }
}

Target parse_target(const std::string &tok, size_t line_no, bool joined) {
    if (tok.rfind("rec[", 0) == 0) {
        if (tok.back() != ']') {
            fail(line_no, "malformed record target '" + tok + "'");
        }
        std::string inner = tok.substr(4, tok.size() - 5);
        double v = parse_double(inner, line_no);
        auto lb = static_cast<int32_t>(v);
        if (lb != v || lb >= 0) {
            fail(line_no, "record lookback must be a negative integer: '" + tok + "'");
        }
        return Target::rec(lb);
    }
    if (tok.size() > 1 && (tok[0] == 'X' || tok[0] == 'Y' || tok[0] == 'Z') &&
        std::isdigit(static_cast<unsigned char>(tok[1]))) {
        double v = parse_double(tok.substr(1), line_no);
        if (v < 0 || v != std::floor(v)) {
            fail(line_no, "malformed pauli target '" + tok + "'");
        }
        return Target::p(tok[0], static_cast<uint32_t>(v), joined);
    }
    double v = parse_double(tok, line_no);
    if (v < 0 || v != std::floor(v)) {
        fail(line_no, "qubit targets must be nonnegative integers: '" + tok + "'");
    }
    return Target::q(static_cast<uint32_t>(v));
}

struct ParsedLine {
    std::string name;
    std::vector<double> args;
    std::vector<Target> targets;
};

ParsedLine split_line(const std::string &line, size_t line_no) {
    ParsedLine out;
    size_t i = 0;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '(') {
        out.name.push_back(line[i]);
        i++;
    }
    if (out.name.empty()) {
        fail(line_no, "missing instruction name");
    }
    if (i < line.size() && line[i] == '(') {
        size_t close = line.find(')', i);
        if (close == std::string::npos) {
            fail(line_no, "missing ')' in argument list");
        }
        std::string inner = line.substr(i + 1, close - i - 1);
        std::istringstream ss(inner);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            piece = trim(piece);
            if (piece.empty()) {
                fail(line_no, "empty argument");
            }
            out.args.push_back(parse_double(piece, line_no));
        }
        i = close + 1;
    }
    // Split remaining tokens on whitespace; '*' joins pauli targets.
    std::istringstream ss(line.substr(i));
    std::string tok;
    while (ss >> tok) {
        size_t start = 0;
        bool joined = false;
        while (start < tok.size()) {
            size_t star = tok.find('*', start);
            std::string piece = tok.substr(start, star == std::string::npos ? star : star - start);
            if (piece.empty()) {
                fail(line_no, "dangling '*' in targets");
            }
            out.targets.push_back(parse_target(piece, line_no, joined));
            if (star == std::string::npos) {
                break;
            }
            joined = true;
            start = star + 1;
        }
    }
    return out;
}

void check_probability(double p, size_t line_no) {
    if (!(p >= 0.0 && p <= 1.0)) {
        fail(line_no, "probability outside [0, 1]");
    }
}

struct Builder {
    Circuit circuit;
    uint32_t measurements = 0;

    void note_qubit(uint32_t q) {
        circuit.num_qubits = std::max(circuit.num_qubits, q + 1);
    }

    uint32_t resolve_rec(const Target &t, size_t line_no) const {
        int32_t k = -t.lookback;
        if (k < 1 || static_cast<uint32_t>(k) > measurements) {
            fail(line_no, "record lookback rec[" + std::to_string(t.lookback) +
                              "] out of range (have " + std::to_string(measurements) +
                              " measurements)");
        }
        return measurements - static_cast<uint32_t>(k);
    }

    void add(const OpInfo &info, ParsedLine &&pl, size_t line_no) {
        int n_args = static_cast<int>(pl.args.size());
        if (n_args < info.min_args || (info.max_args >= 0 && n_args > info.max_args)) {
            fail(line_no, std::string(info.name) + ": wrong number of arguments");
        }
        if (info.is_noise) {
            double sum = 0;
            for (double a : pl.args) {
                check_probability(a, line_no);
                sum += a;
            }
            if ((info.op == Op::pauli_channel_1 || info.op == Op::pauli_channel_2) &&
                sum > 1.0 + 1e-12) {
                fail(line_no, std::string(info.name) + ": probabilities sum above 1");
            }
        }

        switch (info.op) {
            case Op::detector: {
                DetectorDecl decl;
                decl.coords = pl.args;
                if (pl.targets.empty()) {
                    fail(line_no, "DETECTOR needs at least one record target");
                }
                for (const auto &t : pl.targets) {
                    if (t.kind != Target::Kind::rec) {
                        fail(line_no, "DETECTOR targets must be rec[-k]");
                    }
                    decl.measurements.push_back(resolve_rec(t, line_no));
                }
                circuit.detectors.push_back(std::move(decl));
                break;
            }
            case Op::observable_include: {
                double idx = pl.args[0];
                if (idx < 0 || idx != std::floor(idx)) {
                    fail(line_no, "observable index must be a nonnegative integer");
                }
                auto k = static_cast<size_t>(idx);
                if (circuit.observables.size() <= k) {
                    circuit.observables.resize(k + 1);
                }
                if (pl.targets.empty()) {
                    fail(line_no, "OBSERVABLE_INCLUDE needs at least one record target");
                }
                for (const auto &t : pl.targets) {
                    if (t.kind != Target::Kind::rec) {
                        fail(line_no, "OBSERVABLE_INCLUDE targets must be rec[-k]");
                    }
                    // Parity semantics: duplicate references cancel.
                    uint32_t abs = resolve_rec(t, line_no);
                    auto &obs = circuit.observables[k];
                    auto it = std::find(obs.begin(), obs.end(), abs);
                    if (it != obs.end()) {
                        obs.erase(it);
                    } else {
                        obs.push_back(abs);
                    }
                }
                break;
            }
            case Op::mpp: {
                if (pl.targets.empty()) {
                    fail(line_no, "MPP needs at least one pauli product");
                }
                for (const auto &t : pl.targets) {
                    if (t.kind != Target::Kind::pauli) {
                        fail(line_no, "MPP targets must be pauli targets like X0*Z1");
                    }
                    note_qubit(t.qubit);
                }
                std::set<uint32_t> in_product;
                for (const auto &t : pl.targets) {
                    if (!t.joined) {
                        in_product.clear();
                        measurements++;
                    }
                    if (!in_product.insert(t.qubit).second) {
                        fail(line_no, "MPP product touches a qubit twice");
                    }
                }
                break;
            }
            case Op::correlated_error: {
                if (pl.targets.empty()) {
                    fail(line_no, "CORRELATED_ERROR needs pauli targets");
                }
                std::set<uint32_t> seen;
                for (const auto &t : pl.targets) {
                    if (t.kind != Target::Kind::pauli) {
                        fail(line_no, "CORRELATED_ERROR targets must be pauli targets");
                    }
                    if (!seen.insert(t.qubit).second) {
                        fail(line_no, "CORRELATED_ERROR touches a qubit twice");
                    }
                    note_qubit(t.qubit);
                }
                break;
            }
            default: {
                if (info.target_group == 0) {
                    break;  // TICK
                }
                if (pl.targets.empty() && info.op != Op::tick) {
                    fail(line_no, std::string(info.name) + ": missing targets");
                }
                if (pl.targets.size() % info.target_group != 0) {
                    fail(line_no, std::string(info.name) + ": targets not groupable by " +
                                      std::to_string(info.target_group));
                }
                bool rec_ok_first = info.op == Op::cx || info.op == Op::cz;
                for (size_t i = 0; i < pl.targets.size(); i++) {
                    const Target &t = pl.targets[i];
                    if (t.kind == Target::Kind::pauli) {
                        fail(line_no, std::string(info.name) + ": unexpected pauli target");
                    }
                    if (t.kind == Target::Kind::rec) {
                        bool first_of_pair = (i % 2 == 0);
                        bool allowed = rec_ok_first && (first_of_pair || info.op == Op::cz);
                        if (!allowed) {
                            fail(line_no,
                                 std::string(info.name) + ": record target not allowed here");
                        }
                        resolve_rec(t, line_no);
                    } else {
                        note_qubit(t.qubit);
                    }
                }
                if (info.op == Op::cx || info.op == Op::cz || info.op == Op::swap_q ||
                    info.op == Op::depolarize2) {
                    for (size_t i = 0; i + 1 < pl.targets.size(); i += 2) {
                        const Target &a = pl.targets[i], &b = pl.targets[i + 1];
                        if (a.kind == Target::Kind::qubit && b.kind == Target::Kind::qubit &&
                            a.qubit == b.qubit) {
                            fail(line_no, std::string(info.name) + ": qubit paired with itself");
                        }
                        if (a.kind == Target::Kind::rec && b.kind == Target::Kind::rec) {
                            fail(line_no, std::string(info.name) + ": both targets are records");
                        }
                    }
                }
                if (info.op == Op::m || info.op == Op::mx || info.op == Op::mr) {
                    measurements += static_cast<uint32_t>(pl.targets.size());
                }
                break;
            }
        }
        circuit.instructions.push_back(Instruction{info.op, std::move(pl.args),
                                                   std::move(pl.targets)});
    }
};

}  // namespace

Circuit parse_circuit(const std::string &text) {
    std::vector<std::pair<size_t, std::string>> lines;
    {
        std::istringstream ss(text);
        std::string raw;
        size_t n = 0;
        while (std::getline(ss, raw)) {
            n++;
            size_t hash = raw.find('#');
            if (hash != std::string::npos) {
                raw = raw.substr(0, hash);
            }
            raw = trim(raw);
            if (!raw.empty()) {
                lines.emplace_back(n, raw);
            }
        }
    }

    Builder b;
    // Expand REPEAT blocks up front; nesting allowed.
    struct Frame {
        uint64_t remaining;
        size_t body_start;
    };
    std::vector<std::pair<size_t, std::string>> seq;
    std::vector<Frame> stack;
    for (size_t i = 0; i < lines.size(); i++) {
        auto [line_no, content] = lines[i];
        if (content.rfind("REPEAT", 0) == 0 &&
            (content.size() == 6 || std::isspace(static_cast<unsigned char>(content[6])))) {
            size_t brace = content.find('{');
            if (brace == std::string::npos) {
                fail(line_no, "REPEAT requires '{' on the same line");
            }
            std::string count_str = trim(content.substr(6, brace - 6));
            double cnt = parse_double(count_str, line_no);
            if (cnt < 1 || cnt != std::floor(cnt)) {
                fail(line_no, "REPEAT count must be a positive integer");
            }
            std::string rest = trim(content.substr(brace + 1));
            seq.emplace_back(line_no, "REPEAT_OPEN " + count_str);
            if (!rest.empty() && rest != "}") {
                if (!rest.empty() && rest.back() == '}') {
                    seq.emplace_back(line_no, trim(rest.substr(0, rest.size() - 1)));
                    seq.emplace_back(line_no, "REPEAT_CLOSE");
                } else {
                    seq.emplace_back(line_no, rest);
                }
            } else if (rest == "}") {
                seq.emplace_back(line_no, "REPEAT_CLOSE");
            }
            continue;
        }
        if (content == "}") {
            seq.emplace_back(line_no, "REPEAT_CLOSE");
            continue;
        }
        if (content.back() == '}') {
            seq.emplace_back(line_no, trim(content.substr(0, content.size() - 1)));
            seq.emplace_back(line_no, "REPEAT_CLOSE");
            continue;
        }
        seq.emplace_back(line_no, content);
    }

    // Recursive expansion over the flattened token stream.
    struct Expander {
        const std::vector<std::pair<size_t, std::string>> &seq;
        Builder &b;

        size_t run(size_t i, size_t end) {
            while (i < end) {
                auto [line_no, content] = seq[i];
                if (content.rfind("REPEAT_OPEN ", 0) == 0) {
                    uint64_t count = std::stoull(content.substr(12));
                    size_t body = i + 1;
                    size_t close = find_close(body, end, line_no);
                    for (uint64_t r = 0; r < count; r++) {
                        run(body, close);
                    }
                    i = close + 1;
                    continue;
                }
                if (content == "REPEAT_CLOSE") {
                    fail(line_no, "unmatched '}'");
                }
                ParsedLine pl = split_line(content, line_no);
                const OpInfo *info = find_op(pl.name);
                if (!info) {
                    if (pl.name == "ELSE_CORRELATED_ERROR") {
                        fail(line_no, "ELSE_CORRELATED_ERROR is not supported");
                    }
                    fail(line_no, "unknown instruction '" + pl.name + "'");
                }
                b.add(*info, std::move(pl), line_no);
                i++;
            }
            return i;
        }

        size_t find_close(size_t i, size_t end, size_t line_no) {
            int depth = 0;
            for (; i < end; i++) {
                const std::string &c = seq[i].second;
                if (c.rfind("REPEAT_OPEN ", 0) == 0) {
                    depth++;
                } else if (c == "REPEAT_CLOSE") {
                    if (depth == 0) {
                        return i;
                    }
                    depth--;
                }
            }
            fail(line_no, "REPEAT block not closed");
        }
    };
    Expander{seq, b}.run(0, seq.size());

    b.circuit.num_measurements = b.measurements;
    for (size_t k = 0; k < b.circuit.observables.size(); k++) {
        if (b.circuit.observables[k].empty()) {
            throw std::invalid_argument("observable " + std::to_string(k) +
                                        " has an empty record set");
        }
    }
    return b.circuit;
}

bool Circuit::operator==(const Circuit &o) const {
    return instructions == o.instructions && num_qubits == o.num_qubits &&
           num_measurements == o.num_measurements && detectors == o.detectors &&
           observables == o.observables;
}

std::string Circuit::str() const {
    std::ostringstream ss;
    for (const auto &inst : instructions) {
        ss << op_name(inst.op);
        if (!inst.args.empty()) {
            ss << "(";
            for (size_t i = 0; i < inst.args.size(); i++) {
                if (i) {
                    ss << ", ";
                }
                ss << inst.args[i];
            }
            ss << ")";
        }
        for (size_t i = 0; i < inst.targets.size(); i++) {
            const Target &t = inst.targets[i];
            if (t.kind == Target::Kind::pauli && t.joined) {
                ss << "*";
            } else {
                ss << " ";
            }
            switch (t.kind) {
                case Target::Kind::qubit: ss << t.qubit; break;
                case Target::Kind::rec: ss << "rec[" << t.lookback << "]"; break;
                case Target::Kind::pauli: ss << t.pauli << t.qubit; break;
            }
        }
        ss << "\n";
    }
    return ss.str();
}

CircuitStats circuit_stats(const Circuit &c) {
    CircuitStats s;
    s.num_detectors = c.detectors.size();
    s.num_observables = c.observables.size();
    s.num_measurements = c.num_measurements;
    for (const auto &inst : c.instructions) {
        const OpInfo &info = info_for(inst.op);
        size_t apps = info.target_group > 0 ? inst.targets.size() / info.target_group : 1;
        switch (inst.op) {
            case Op::t:
            case Op::t_dag:
                s.num_magic += apps;
                break;
            case Op::rot_x:
            case Op::rot_y:
            case Op::rot_z: {
                // Angles are in units of pi; multiples of 1/2 are Clifford.
                double a = inst.args[0] * 2.0;
                bool clifford = std::abs(a - std::round(a)) < 1e-12;
                (clifford ? s.num_gates : s.num_magic) += apps;
                break;
            }
            case Op::u3: {
                bool clifford = true;
                for (double arg : inst.args) {
                    double a = arg * 2.0;
                    clifford &= std::abs(a - std::round(a)) < 1e-12;
                }
                (clifford ? s.num_gates : s.num_magic) += apps;
                break;
            }
            case Op::x_error:
            case Op::y_error:
            case Op::z_error:
            case Op::depolarize1:
            case Op::depolarize2:
            case Op::pauli_channel_1:
            case Op::pauli_channel_2:
                s.num_error_locations += apps;
                break;
            case Op::correlated_error:
                s.num_error_locations += 1;
                break;
            case Op::detector:
            case Op::observable_include:
            case Op::tick:
            case Op::qubit_coords:
                break;
            case Op::mpp: {
                for (const auto &t : inst.targets) {
                    if (!t.joined) {
                        s.num_gates++;  // one measurement op per product
                    }
                }
                break;
            }
            default:
                s.num_gates += apps;
                break;
        }
    }
    return s;
}

const char *op_name(Op op) { return info_for(op).name; }

}  // namespace zxsim
