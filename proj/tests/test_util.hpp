#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zxsim/circuit.hpp"

namespace zxsim::testing {

/// Deterministic random circuit source shared by unit and acceptance tests.
struct CircuitGen {
    std::mt19937 rng;

    explicit CircuitGen(uint32_t seed) : rng(seed) {}

    int pick(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    }
    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

    /// Random circuit over <= num_qubits qubits. Magic gates and channels
    /// appear only if requested; every circuit ends with measurements.
    std::string random_circuit(int num_qubits, int num_instructions, bool with_magic,
                               double max_p, int max_channels, bool with_detectors) {
        std::ostringstream ss;
        int measurements = 0;
        int channels = 0;
        auto q = [&] { return pick(0, num_qubits - 1); };
        for (int i = 0; i < num_instructions; i++) {
            int kind = pick(0, with_magic ? 13 : 9);
            switch (kind) {
                case 0: ss << "H " << q(); break;
                case 1: ss << "S " << q(); break;
                case 2: ss << "X " << q(); break;
                case 3: ss << "Z " << q(); break;
                case 4: ss << "SQRT_X " << q(); break;
                case 5: {
                    if (num_qubits < 2) {
                        ss << "H " << q();
                        break;
                    }
                    int a = q(), b = q();
                    if (a == b) {
                        b = (a + 1) % num_qubits;
                    }
                    ss << (pick(0, 1) ? "CX " : "CZ ") << a << " " << b;
                    break;
                }
                case 6: {
                    if (channels >= max_channels) {
                        ss << "S_DAG " << q();
                        break;
                    }
                    channels++;
                    double p = unit() * max_p;
                    switch (pick(0, 3)) {
                        case 0: ss << "X_ERROR(" << p << ") " << q(); break;
                        case 1: ss << "Z_ERROR(" << p << ") " << q(); break;
                        case 2: ss << "Y_ERROR(" << p << ") " << q(); break;
                        default: ss << "DEPOLARIZE1(" << p << ") " << q(); break;
                    }
                    break;
                }
                case 7: {
                    if (channels >= max_channels || num_qubits < 2) {
                        ss << "H " << q();
                        break;
                    }
                    channels++;
                    int a = q(), b = q();
                    if (a == b) {
                        b = (a + 1) % num_qubits;
                    }
                    ss << "DEPOLARIZE2(" << unit() * max_p << ") " << a << " " << b;
                    break;
                }
                case 8:
                    if (measurements < 6) {
                        ss << "M " << q();
                        measurements++;
                    } else {
                        ss << "H " << q();
                    }
                    break;
                case 9:
                    ss << "R " << q();
                    break;
                case 10: ss << "T " << q(); break;
                case 11: ss << "T_DAG " << q(); break;
                case 12: ss << "R_Z(" << unit() << ") " << q(); break;
                default: ss << "R_X(" << unit() << ") " << q(); break;
            }
            ss << "\n";
        }
        if (measurements == 0) {
            ss << "M 0\n";
            measurements = 1;
        }
        if (with_detectors) {
            int detectors = pick(1, std::min(measurements, 3));
            for (int d = 0; d < detectors; d++) {
                ss << "DETECTOR";
                int refs = pick(1, 2);
                for (int r = 0; r < refs; r++) {
                    ss << " rec[-" << pick(1, measurements) << "]";
                }
                ss << "\n";
            }
            ss << "OBSERVABLE_INCLUDE(0) rec[-" << pick(1, measurements) << "]\n";
        }
        return ss.str();
    }
};

}  // namespace zxsim::testing
