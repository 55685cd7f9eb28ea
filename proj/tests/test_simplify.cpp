#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "zxsim/lowering.hpp"
#include "zxsim/simplify.hpp"
#include "zxsim/tensor.hpp"

using namespace zxsim;

namespace {

Diagram lowered_undoubled(const std::string &text, SampleMode mode = SampleMode::detectors) {
    Circuit c = parse_circuit(text);
    return undouble(lower(c, mode).diagram);
}

bool has_internal_proper_clifford(const Diagram &d) {
    for (VertexId v : d.vertex_ids()) {
        if (d.is_boundary(v)) {
            continue;
        }
        bool near_boundary = false;
        for (const auto &[w, e] : d.neighbors(v)) {
            near_boundary |= d.is_boundary(w);
        }
        if (!near_boundary && d.vertex(v).phase.is_proper_clifford()) {
            return true;
        }
    }
    return false;
}

bool has_adjacent_internal_pauli_pair(const Diagram &d) {
    for (VertexId v : d.vertex_ids()) {
        if (d.is_boundary(v) || !d.vertex(v).phase.is_pauli()) {
            continue;
        }
        bool v_near = false;
        for (const auto &[w, e] : d.neighbors(v)) {
            v_near |= d.is_boundary(w);
        }
        if (v_near) {
            continue;
        }
        for (const auto &[w, e] : d.neighbors(v)) {
            if (d.vertex(w).phase.is_pauli()) {
                bool w_near = false;
                for (const auto &[x, e2] : d.neighbors(w)) {
                    w_near |= d.is_boundary(x);
                }
                if (!w_near) {
                    return true;
                }
            }
        }
    }
    return false;
}

}  // namespace

TEST_CASE("fusion adds phases and keeps parities") {
    Diagram d;
    d.set_num_params(1);
    VertexId b1 = d.add_boundary_output();
    VertexId b2 = d.add_boundary_output();
    VertexId u = d.add_vertex(VKind::z_spider, Layer::classical, Phase(0, Parity({0})));
    VertexId v = d.add_vertex(VKind::z_spider, Layer::classical, Phase(2));
    d.add_edge(b1, u, EdgeKind::plain);
    d.add_edge(u, v, EdgeKind::plain);
    d.add_edge(v, b2, EdgeKind::plain);
    RewriteTrace trace;
    Diagram g = to_graph_like(d, &trace);
    CHECK(trace.fusion == 1);
    CHECK(g.vertex_count() == 3);
    for (VertexId w : g.vertex_ids()) {
        if (!g.is_boundary(w)) {
            CHECK(g.vertex(w).phase.exact == 2);
            CHECK(g.vertex(w).phase.parity == Parity({0}));
        }
    }
    CHECK(verify_semantics(d, g));
}

TEST_CASE("color change turns x spiders into z with hadamard edges") {
    Diagram d;
    VertexId b1 = d.add_boundary_output();
    VertexId b2 = d.add_boundary_output();
    VertexId z1 = d.add_vertex(VKind::z_spider, Layer::classical, Phase(1));
    VertexId x = d.add_vertex(VKind::x_spider, Layer::classical, Phase(0));
    VertexId z2 = d.add_vertex(VKind::z_spider, Layer::classical, Phase(7));
    d.add_edge(b1, z1, EdgeKind::plain);
    d.add_edge(z1, x, EdgeKind::plain);
    d.add_edge(x, z2, EdgeKind::plain);
    d.add_edge(z2, b2, EdgeKind::plain);
    Diagram g = to_graph_like(d);
    for (VertexId w : g.vertex_ids()) {
        CHECK(g.vertex(w).kind != VKind::x_spider);
    }
    CHECK(verify_semantics(d, g));
}

TEST_CASE("identity spiders drop out") {
    Diagram d;
    VertexId b1 = d.add_boundary_output();
    VertexId b2 = d.add_boundary_output();
    VertexId mid = d.add_vertex(VKind::z_spider, Layer::classical, Phase(0));
    VertexId s = d.add_vertex(VKind::z_spider, Layer::classical, Phase(3));
    d.add_edge(b1, mid, EdgeKind::hadamard);
    d.add_edge(mid, s, EdgeKind::hadamard);
    d.add_edge(s, b2, EdgeKind::plain);
    RewriteTrace trace;
    Diagram g = to_graph_like(d, &trace);
    CHECK(trace.identity == 1);
    CHECK(g.vertex_count() == 3);
    CHECK(verify_semantics(d, g));
}

TEST_CASE("closed clifford loop reduces to its scalar") {
    Diagram d;
    VertexId a = d.add_vertex(VKind::z_spider, Layer::classical, Phase(2));
    VertexId b = d.add_vertex(VKind::z_spider, Layer::classical, Phase(6));
    VertexId c = d.add_vertex(VKind::z_spider, Layer::classical, Phase(4));
    VertexId e = d.add_vertex(VKind::z_spider, Layer::classical, Phase(2));
    d.add_edge(a, b, EdgeKind::hadamard);
    d.add_edge(b, c, EdgeKind::hadamard);
    d.add_edge(c, e, EdgeKind::hadamard);
    d.add_edge(e, a, EdgeKind::hadamard);
    cdouble reference = to_tensor(d, {}).scalar();
    auto [reduced, trace] = clifford_simplify(d);
    CHECK(reduced.vertex_count() == 0);
    CHECK(std::abs(reduced.scalar().const_value() - reference) < 1e-10);
}

TEST_CASE("unitary followed by its adjoint reduces to scalar one") {
    // GHZ preparation then unpreparation, all qubits discarded: the closed
    // diagram is the trace of a normalized state.
    Diagram d = lowered_undoubled("H 0\nCX 0 1\nCX 0 2\nCX 0 2\nCX 0 1\nH 0");
    auto [reduced, trace] = clifford_simplify(d);
    CHECK(reduced.vertex_count() == 0);
    CHECK(std::abs(reduced.scalar().const_value() - cdouble(1.0, 0.0)) < 1e-10);
}

TEST_CASE("local complementation and pivoting preserve semantics on circuits") {
    testing::CircuitGen gen(0xc0ffee);
    for (int i = 0; i < 50; i++) {
        std::string text = gen.random_circuit(4, 9, false, 0.3, 2, false);
        CAPTURE(text);
        Diagram d = lowered_undoubled(text, SampleMode::measurements);
        if (d.num_params() > 8) {
            continue;
        }
        auto [reduced, trace] = clifford_simplify(d);
        CHECK(verify_semantics(d, reduced));
        CHECK(!has_internal_proper_clifford(reduced));
        CHECK(!has_adjacent_internal_pauli_pair(reduced));
    }
}

TEST_CASE("reduction handles magic spiders by leaving them in place") {
    testing::CircuitGen gen(0xbead);
    for (int i = 0; i < 25; i++) {
        std::string text = gen.random_circuit(3, 8, true, 0.3, 2, false);
        CAPTURE(text);
        Diagram d = lowered_undoubled(text, SampleMode::measurements);
        if (d.num_params() > 8) {
            continue;
        }
        auto [reduced, trace] = clifford_simplify(d);
        CHECK(verify_semantics(d, reduced));
    }
}

TEST_CASE("detector-mode diagrams reduce soundly") {
    testing::CircuitGen gen(0xfeed);
    for (int i = 0; i < 25; i++) {
        std::string text = gen.random_circuit(3, 8, false, 0.3, 2, true);
        CAPTURE(text);
        Diagram d = lowered_undoubled(text, SampleMode::detectors);
        if (d.num_params() > 8) {
            continue;
        }
        auto [reduced, trace] = clifford_simplify(d);
        CHECK(verify_semantics(d, reduced));
    }
}

TEST_CASE("verify_semantics rejects a corrupted diagram") {
    Diagram d = lowered_undoubled("H 0\nX_ERROR(0.1) 0\nM 0\nDETECTOR rec[-1]");
    auto [reduced, trace] = clifford_simplify(d);
    REQUIRE(verify_semantics(d, reduced));
    for (VertexId v : reduced.vertex_ids()) {
        if (!reduced.is_boundary(v)) {
            reduced.vertex(v).phase += Phase(2);
            break;
        }
    }
    CHECK(!verify_semantics(d, reduced));
}

TEST_CASE("rewrite choices ignore parity content") {
    // Relabeling which parameters a parity mentions must not change which
    // rewrites fire; one compilation serves all noise configurations.
    auto relabel = [](const Diagram &d) {
        Diagram copy = d;
        for (VertexId v : copy.vertex_ids()) {
            if (copy.is_boundary(v)) {
                continue;
            }
            Parity &p = copy.vertex(v).phase.parity;
            if (!p.empty()) {
                std::vector<uint32_t> shifted;
                for (uint32_t b : p.bits()) {
                    shifted.push_back(2 * b);
                    shifted.push_back(2 * b + 1);  // widen every parity
                }
                p = Parity(shifted);
            }
        }
        copy.set_num_params(2 * d.num_params());
        return copy;
    };
    Diagram d = lowered_undoubled(
        "H 0\nX_ERROR(0.2) 0\nCX 0 1\nDEPOLARIZE1(0.1) 1\nM 0 1\nDETECTOR rec[-1] rec[-2]");
    Diagram relabeled = relabel(d);
    auto [r1, t1] = clifford_simplify(d);
    auto [r2, t2] = clifford_simplify(std::move(relabeled));
    CHECK(relabel(r1).dump_text() == r2.dump_text());
    CHECK(t1.fusion == t2.fusion);
    CHECK(t1.identity == t2.identity);
    CHECK(t1.local_complementation == t2.local_complementation);
    CHECK(t1.pivot == t2.pivot);
}
