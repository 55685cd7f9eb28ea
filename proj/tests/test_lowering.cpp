#include <cmath>
#include <string>

#include "doctest.h"
#include "zxsim/lowering.hpp"
#include "zxsim/oracle.hpp"
#include "zxsim/tensor.hpp"

using namespace zxsim;

namespace {

// Enumerate channel outcome patterns of a lowered program: assignment over
// the e-parameters plus the pattern probability.
struct PatternEnum {
    const LoweredProgram &lp;

    template <typename F>
    void for_each(F &&fn) const {
        std::vector<bool> assignment(lp.e_param_count, false);
        walk(0, 1.0, assignment, fn);
    }

    template <typename F>
    void walk(size_t group, double prob, std::vector<bool> &assignment, F &&fn) const {
        if (group == lp.channels.size()) {
            fn(assignment, prob);
            return;
        }
        const ChannelGroup &g = lp.channels[group];
        for (size_t idx = 0; idx < g.table.size(); idx++) {
            if (g.table[idx] == 0.0) {
                continue;
            }
            for (size_t b = 0; b < g.param_indices.size(); b++) {
                assignment[g.param_indices[b]] = (idx >> b) & 1;
            }
            walk(group + 1, prob * g.table[idx], assignment, fn);
        }
    }
};

// Marginal output distribution predicted by the lowered diagram.
std::vector<double> lowered_distribution(const LoweredProgram &lp) {
    size_t n_out = lp.diagram.outputs().size();
    std::vector<double> dist(size_t(1) << n_out, 0.0);
    PatternEnum{lp}.for_each([&](const std::vector<bool> &assignment, double prob) {
        DenseTensor t = to_tensor(lp.diagram, assignment);
        for (size_t k = 0; k < dist.size(); k++) {
            CHECK(std::abs(t.data[k].imag()) < 1e-9);
            dist[k] += prob * t.data[k].real();
        }
    });
    return dist;
}

void check_against_oracle(const std::string &text, SampleMode mode) {
    CAPTURE(text);
    Circuit c = parse_circuit(text);
    LoweredProgram lp = lower(c, mode);
    OutcomeDistribution oracle = oracle_distribution(c, mode);
    std::vector<double> mine = lowered_distribution(lp);
    for (size_t k = 0; k < mine.size(); k++) {
        CAPTURE(k);
        CHECK(std::abs(mine[k] - oracle.at(k)) < 1e-9);
    }
}

}  // namespace

TEST_CASE("channel tables follow the documented conventions") {
    auto x = channel_table(Op::x_error, {0.25});
    CHECK(x == std::vector<double>({0.75, 0.25}));

    auto d1 = channel_table(Op::depolarize1, {0.3});
    CHECK(d1[0] == doctest::Approx(0.7));
    CHECK(d1[1] == doctest::Approx(0.1));
    CHECK(d1[2] == doctest::Approx(0.1));
    CHECK(d1[3] == doctest::Approx(0.1));

    // (e_x=1, e_z=0) fires with px, (1,1) with py, (0,1) with pz.
    auto pc1 = channel_table(Op::pauli_channel_1, {0.1, 0.1, 0.2});
    CHECK(pc1[1] == doctest::Approx(0.1));
    CHECK(pc1[3] == doctest::Approx(0.1));
    CHECK(pc1[2] == doctest::Approx(0.2));
    CHECK(pc1[0] == doctest::Approx(0.6));

    auto d2 = channel_table(Op::depolarize2, {0.015});
    CHECK(d2[0] == doctest::Approx(0.985));
    for (size_t i = 1; i < 16; i++) {
        CHECK(d2[i] == doctest::Approx(0.001));
    }
    double sum = 0;
    for (double v : channel_table(Op::pauli_channel_2,
                                  {0.01, 0.02, 0.03, 0.04, 0.01, 0.02, 0.03, 0.04, 0.01, 0.02,
                                   0.03, 0.04, 0.01, 0.02, 0.03})) {
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("x error lowers to one parameterized vertex and a bernoulli table") {
    Circuit c = parse_circuit("X_ERROR(0.1) 0\nM 0\nDETECTOR rec[-1]");
    LoweredProgram lp = lower(c, SampleMode::detectors);
    REQUIRE(lp.channels.size() == 1);
    CHECK(lp.channels[0].table == std::vector<double>({0.9, 0.1}));
    CHECK(lp.e_param_count == 1);
    CHECK(lp.num_detectors == 1);

    // The detector reads the flip bit exactly.
    DenseTensor t0 = to_tensor(lp.diagram, {false});
    DenseTensor t1 = to_tensor(lp.diagram, {true});
    CHECK(t0.data[0].real() == doctest::Approx(1.0));
    CHECK(t0.data[1].real() == doctest::Approx(0.0));
    CHECK(t1.data[0].real() == doctest::Approx(0.0));
    CHECK(t1.data[1].real() == doctest::Approx(1.0));
}

TEST_CASE("pauli channel allocates x and z vertices over two bits") {
    Circuit c = parse_circuit("PAULI_CHANNEL_1(0.1, 0.1, 0.2) 0\nM 0");
    LoweredProgram lp = lower(c, SampleMode::detectors);
    REQUIRE(lp.channels.size() == 1);
    CHECK(lp.channels[0].param_indices.size() == 2);
    CHECK(lp.e_param_count == 2);

    Circuit c2 = parse_circuit("DEPOLARIZE2(0.01) 0 1\nM 0 1");
    LoweredProgram lp2 = lower(c2, SampleMode::detectors);
    REQUIRE(lp2.channels.size() == 1);
    CHECK(lp2.channels[0].param_indices.size() == 4);
    CHECK(lp2.channels[0].table.size() == 16);
}

TEST_CASE("correlated error drives several qubits from one bit") {
    std::string text = "E(0.2) X0 Z1\nH 1\nM 0 1\nDETECTOR rec[-2]";
    Circuit c = parse_circuit(text);
    LoweredProgram lp = lower(c, SampleMode::detectors);
    REQUIRE(lp.channels.size() == 1);
    CHECK(lp.channels[0].param_indices.size() == 1);
    CHECK(lp.channels[0].table == std::vector<double>({0.8, 0.2}));
    check_against_oracle(text, SampleMode::detectors);
}

TEST_CASE("gate gadgets reproduce the oracle distribution, measurement mode") {
    for (const char *text : {
             "H 0\nM 0",
             "H 0\nS 0\nH 0\nM 0",
             "H 0\nS_DAG 0\nH 0\nM 0",
             "SQRT_X 0\nM 0",
             "SQRT_X_DAG 0\nM 0",
             "X 0\nM 0",
             "Y 0\nM 0",
             "H 0\nZ 0\nH 0\nM 0",
             "H 0\nT 0\nH 0\nM 0",
             "H 0\nT_DAG 0\nH 0\nM 0",
             "H 0\nCNOT 0 1\nM 0 1",
             "H 0\nH 1\nCZ 0 1\nH 1\nM 0 1",
             "H 0\nSWAP 0 1\nM 0 1",
             "R_X(0.3) 0\nM 0",
             "R_Y(0.37) 0\nM 0",
             "H 0\nR_Z(0.25) 0\nH 0\nM 0",
             "U3(0.3, 0.7, 1.1) 0\nM 0",
             "RX 0\nM 0",
             "H 0\nMX 0\nM 0",
             "H 0\nCNOT 0 1\nMR 0\nM 0 1",
             "H 0\nM 0\nCX rec[-1] 1\nM 1",
             "H 0\nM 0\nH 1\nCZ 1 rec[-1]\nH 1\nM 1",
             "MPP X0*Z1 Y2\nM 0 1 2",
             "H 0\nCNOT 0 1\nMPP Z0*Z1\nMPP X0*X1\nM 0",
         }) {
        check_against_oracle(text, SampleMode::measurements);
    }
}

TEST_CASE("noise gadgets reproduce the oracle distribution") {
    for (const char *text : {
             "X_ERROR(0.2) 0\nM 0",
             "H 0\nZ_ERROR(0.3) 0\nH 0\nM 0",
             "Y_ERROR(0.25) 0\nM 0",
             "DEPOLARIZE1(0.3) 0\nM 0",
             "H 0\nDEPOLARIZE1(0.3) 0\nM 0",
             "PAULI_CHANNEL_1(0.1, 0.15, 0.2) 0\nH 0\nM 0",
             "H 0\nCNOT 0 1\nDEPOLARIZE2(0.15) 0 1\nM 0 1",
             "E(0.25) X0 Y1 Z2\nH 2\nM 0 1 2",
         }) {
        check_against_oracle(text, SampleMode::measurements);
    }
}

TEST_CASE("detector mode traces unreferenced measurements") {
    // Only the second measurement feeds the detector; the first decoheres.
    check_against_oracle("H 0\nCNOT 0 1\nX_ERROR(0.2) 1\nM 0 1\nDETECTOR rec[-1] rec[-2]",
                         SampleMode::detectors);
    check_against_oracle("RX 0\nR 1\nR_Z(0.125) 0\nPAULI_CHANNEL_1(0.1, 0.1, 0.2) 0 1\n"
                         "H 0\nCNOT 0 1\nDEPOLARIZE2(0.01) 0 1\nM 0 1\nDETECTOR rec[-1] rec[-2]",
                         SampleMode::detectors);
}

TEST_CASE("detector outputs precede observable outputs in declaration order") {
    std::string text =
        "H 0\nM 0 1\nDETECTOR rec[-1]\nOBSERVABLE_INCLUDE(0) rec[-2]\nDETECTOR rec[-2]";
    Circuit c = parse_circuit(text);
    LoweredProgram lp = lower(c, SampleMode::detectors);
    CHECK(lp.diagram.outputs().size() == 3);
    CHECK(lp.num_detectors == 2);
    CHECK(lp.num_observables == 1);
    check_against_oracle(text, SampleMode::detectors);
}

TEST_CASE("measurement mode exposes all measurement wires in record order") {
    Circuit c = parse_circuit("H 0\nM 0\nM 0\nDETECTOR rec[-1] rec[-2]");
    LoweredProgram lp = lower(c, SampleMode::measurements);
    CHECK(lp.diagram.outputs().size() == 2);
    // Repeated measurement of the same qubit is perfectly correlated.
    std::vector<double> dist = lowered_distribution(lp);
    CHECK(dist[0] == doctest::Approx(0.5));
    CHECK(dist[3] == doctest::Approx(0.5));
    CHECK(dist[1] == doctest::Approx(0.0));
    CHECK(dist[2] == doctest::Approx(0.0));
}
