#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zxsim/decompose.hpp"
#include "zxsim/tensor.hpp"

using namespace zxsim;

namespace {
constexpr double kPi = std::numbers::pi;

// A chain of spiders with the given phases, every spider carrying one
// boundary leg, plus Hadamard edges between consecutive spiders.
Diagram gadget_chain(const std::vector<Phase> &phases) {
    Diagram d;
    std::vector<VertexId> spiders;
    for (const Phase &p : phases) {
        VertexId s = d.add_vertex(VKind::z_spider, Layer::classical, p);
        VertexId b = d.add_boundary_output();
        d.add_edge(s, b, EdgeKind::plain);
        spiders.push_back(s);
    }
    for (size_t i = 0; i + 1 < spiders.size(); i++) {
        d.add_edge(spiders[i], spiders[i + 1], EdgeKind::hadamard);
    }
    return d;
}

void check_identity(const Diagram &d, double tol = 1e-10) {
    DecompositionPlan plan = plan_decomposition(d);
    std::vector<CliffordTerm> terms = decompose_magic(d, plan);
    CHECK(terms.size() == plan.total_terms);
    DenseTensor reference = to_tensor(d, {});
    std::vector<cdouble> sum(reference.data.size(), cdouble{});
    for (const CliffordTerm &t : terms) {
        DenseTensor part = to_tensor(t.diagram, {});
        REQUIRE(part.data.size() == sum.size());
        for (size_t i = 0; i < sum.size(); i++) {
            sum[i] += t.weight * part.data[i];
        }
    }
    for (size_t i = 0; i < sum.size(); i++) {
        CHECK(std::abs(sum[i] - reference.data[i]) < tol);
    }
}
}  // namespace

TEST_CASE("magic residual splits off the clifford part") {
    CHECK(magic_residual(Phase(1)) == doctest::Approx(kPi / 4));
    CHECK(magic_residual(Phase(7)) == doctest::Approx(kPi / 4));
    CHECK(magic_residual(Phase(2)) == doctest::Approx(0.0));
    CHECK(magic_residual(Phase::from_radians(kPi / 8)) == doctest::Approx(kPi / 8));
    CHECK(!is_magic(Phase(4)));
    CHECK(is_magic(Phase(3)));
}

TEST_CASE("plan greedily forms cat5 groups, then pairs, then singles") {
    // 1 magic vertex -> single, chi 2.
    {
        DecompositionPlan p = plan_decomposition(gadget_chain({Phase(1)}));
        REQUIRE(p.groups.size() == 1);
        CHECK(p.groups[0].kind == MagicGroup::Kind::single);
        CHECK(p.total_terms == 2);
    }
    // 2 T-like vertices -> pair, chi 2.
    {
        DecompositionPlan p = plan_decomposition(gadget_chain({Phase(1), Phase(7)}));
        REQUIRE(p.groups.size() == 1);
        CHECK(p.groups[0].kind == MagicGroup::Kind::pair);
        CHECK(p.total_terms == 2);
        CHECK(p.rate == doctest::Approx(0.5));
    }
    // No magic -> empty plan, chi 1.
    {
        DecompositionPlan p = plan_decomposition(gadget_chain({Phase(2), Phase(4)}));
        CHECK(p.groups.empty());
        CHECK(p.total_terms == 1);
    }
    // 5 equal-angle rotations -> one cat5 group.
    {
        std::vector<Phase> ph(5, Phase::from_radians(kPi / 8));
        DecompositionPlan p = plan_decomposition(gadget_chain(ph));
        REQUIRE(p.groups.size() == 1);
        CHECK(p.groups[0].kind == MagicGroup::Kind::cat5);
        CHECK(p.total_terms == 6);
    }
    // Generic pairs do not pair; they stay singles.
    {
        std::vector<Phase> ph = {Phase::from_radians(0.3), Phase::from_radians(0.3)};
        DecompositionPlan p = plan_decomposition(gadget_chain(ph));
        REQUIRE(p.groups.size() == 2);
        CHECK(p.total_terms == 4);
    }
    // 7 T vertices -> cat5 + pair.
    {
        std::vector<Phase> ph(7, Phase(1));
        DecompositionPlan p = plan_decomposition(gadget_chain(ph));
        REQUIRE(p.groups.size() == 2);
        CHECK(p.groups[0].kind == MagicGroup::Kind::cat5);
        CHECK(p.groups[1].kind == MagicGroup::Kind::pair);
        CHECK(p.total_terms == 12);
    }
}

TEST_CASE("single decomposition reproduces the gadget tensor") {
    check_identity(gadget_chain({Phase(1)}), 1e-12);
    check_identity(gadget_chain({Phase::from_radians(0.41)}), 1e-12);
    check_identity(gadget_chain({Phase(3, Parity({0, 1}))}), 1e-12);
}

TEST_CASE("pair decomposition reproduces two-rotation tensors") {
    check_identity(gadget_chain({Phase(1), Phase(1)}), 1e-12);
    check_identity(gadget_chain({Phase(1), Phase(7)}), 1e-12);
    check_identity(gadget_chain({Phase(3), Phase(5)}), 1e-12);
}

TEST_CASE("cat5 decomposition reproduces five-rotation tensors") {
    for (double theta : {kPi / 4, kPi / 8, 0.37, 1.91}) {
        std::vector<Phase> ph(5, Phase::from_radians(theta));
        check_identity(gadget_chain(ph));
    }
}

TEST_CASE("decompositions hold with parities and extra structure") {
    Diagram d = gadget_chain({Phase(1, Parity({0})), Phase(7), Phase(2), Phase(1)});
    d.set_num_params(1);
    DecompositionPlan plan = plan_decomposition(d);
    std::vector<CliffordTerm> terms = decompose_magic(d, plan);
    for (bool e : {false, true}) {
        DenseTensor reference = to_tensor(d, {e});
        std::vector<cdouble> sum(reference.data.size(), cdouble{});
        for (const CliffordTerm &t : terms) {
            DenseTensor part = to_tensor(t.diagram, {e});
            for (size_t i = 0; i < sum.size(); i++) {
                sum[i] += t.weight * part.data[i];
            }
        }
        for (size_t i = 0; i < sum.size(); i++) {
            CHECK(std::abs(sum[i] - reference.data[i]) < 1e-10);
        }
    }
}
