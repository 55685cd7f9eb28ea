#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zxsim/phase.hpp"
#include "zxsim/scalar.hpp"

using namespace zxsim;

namespace {
constexpr double kPi = std::numbers::pi;

bool close(cdouble a, cdouble b, double tol = 1e-12) { return std::abs(a - b) < tol; }
}  // namespace

TEST_CASE("parity xor cancels duplicates") {
    Parity a({0, 2, 5});
    Parity b({2, 3});
    Parity c = a ^ b;
    CHECK(c.bits() == std::vector<uint32_t>({0, 3, 5}));
    CHECK((a ^ a).empty());
    CHECK(Parity({1, 1, 2}).bits() == std::vector<uint32_t>({2}));
}

TEST_CASE("phase addition is associative and parity self-cancels") {
    Phase p1(1, Parity({0}));
    Phase p2(3, Parity({1}));
    Phase p3(7, Parity({0, 1}));
    CHECK(((p1 + p2) + p3) == (p1 + (p2 + p3)));
    Phase twice = p1 + p1;
    CHECK(twice.parity.empty());
    CHECK(twice.exact == 2);
}

TEST_CASE("phase from_radians snaps quarter turns") {
    Phase t = Phase::from_radians(kPi / 4);
    CHECK(t.exact == 1);
    CHECK(!t.has_generic());
    Phase g = Phase::from_radians(kPi / 8);
    CHECK(g.exact == 0);
    CHECK(g.has_generic());
    Phase neg = Phase::from_radians(-kPi / 2);
    CHECK(neg.exact == 6);
    CHECK(Phase::from_radians(kPi / 8).conj().const_radians() == doctest::Approx(-kPi / 8));
}

TEST_CASE("clifford and pauli predicates") {
    CHECK(Phase(0).is_pauli());
    CHECK(Phase(4).is_pauli());
    CHECK(Phase(2).is_proper_clifford());
    CHECK(Phase(6).is_proper_clifford());
    CHECK(!Phase(1).is_clifford());
    Phase g = Phase::from_radians(0.3);
    CHECK(!g.is_clifford());
    // Parity does not affect Clifford classification.
    CHECK(Phase(2, Parity({3})).is_proper_clifford());
}

TEST_CASE("phase_pair values at corners") {
    CHECK(close(phase_pair_value(0, 0, false, false), 2.0));
    CHECK(close(phase_pair_value(0, 0, true, true), -2.0));
    CHECK(close(phase_pair_value(0, 0, true, false), 2.0));
}

TEST_CASE("scalar term table") {
    std::vector<bool> a0 = {false};
    std::vector<bool> a1 = {true};
    ScalarTerm node = ScalarTerm::node(kPi / 4, Parity({0}));
    CHECK(close(eval_scalar_term(node, a0), 1.0 + std::polar(1.0, kPi / 4)));
    CHECK(close(eval_scalar_term(node, a1), 1.0 + std::polar(1.0, 5 * kPi / 4)));

    ScalarTerm hp = ScalarTerm::half_pi(+1, Parity({0}));
    CHECK(close(eval_scalar_term(hp, a0), 1.0));
    CHECK(close(eval_scalar_term(hp, a1), cdouble(0, 1)));

    ScalarTerm pp = ScalarTerm::pi_pair(Parity({0}), Parity({0}));
    CHECK(close(eval_scalar_term(pp, a1), -1.0));
    CHECK(close(eval_scalar_term(pp, a0), 1.0));
}

TEST_CASE("every term kind embeds into phase_pair form") {
    std::vector<ScalarTerm> terms = {
        ScalarTerm::node(0.7, Parity({0})),
        ScalarTerm::node(-2.1, Parity({0, 1})),
        ScalarTerm::half_pi(+1, Parity({1})),
        ScalarTerm::half_pi(-1, Parity({0})),
        ScalarTerm::pi_pair(Parity({0}), Parity({1})),
        ScalarTerm::phase_pair(0.3, 1.9, Parity({0}), Parity({1})),
    };
    for (const auto &t : terms) {
        PhasePairForm f = to_phase_pair(t);
        for (int bits = 0; bits < 4; bits++) {
            std::vector<bool> assign = {(bits & 1) != 0, (bits & 2) != 0};
            cdouble direct = eval_scalar_term(t, assign);
            cdouble via = f.prefactor * phase_pair_value(f.alpha, f.beta, f.a.eval(assign),
                                                         f.b.eval(assign));
            CHECK(close(direct, via, 1e-11));
        }
    }
}

TEST_CASE("ledger constant uses sqrt2 exponent") {
    ScalarLedger led;
    for (int i = 0; i < 4000; i++) {
        led.mul_sqrt2_pow(1);
    }
    for (int i = 0; i < 3998; i++) {
        led.mul_sqrt2_pow(-1);
    }
    CHECK(std::abs(led.const_value() - cdouble(2.0, 0)) < 1e-12);
    led.mul_const({0.0, 1.0});
    CHECK(close(led.const_value(), cdouble(0, 2.0)));
}

TEST_CASE("parameter-free terms fold into the constant") {
    ScalarLedger led;
    led.add_term(ScalarTerm::node(0.0, Parity()));
    CHECK(led.terms().empty());
    CHECK(close(led.const_value(), 2.0));
}
