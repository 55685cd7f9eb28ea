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

#include "zxsim/scalar.hpp"

#include <cmath>
#include <numbers>

namespace zxsim {

namespace {
constexpr double kPi = std::numbers::pi;

cdouble expi(double t) { return {std::cos(t), std::sin(t)}; }
}  // namespace

ScalarTerm ScalarTerm::node(double alpha, Parity a) {
    ScalarTerm t;
    t.kind = Kind::node;
    t.alpha = alpha;
    t.a = std::move(a);
    return t;
}

ScalarTerm ScalarTerm::half_pi(int sign, Parity a) {
    ScalarTerm t;
    t.kind = Kind::half_pi;
    t.sign = sign;
    t.a = std::move(a);
    return t;
}

ScalarTerm ScalarTerm::pi_pair(Parity a, Parity b) {
    ScalarTerm t;
    t.kind = Kind::pi_pair;
    t.a = std::move(a);
    t.b = std::move(b);
    return t;
}

ScalarTerm ScalarTerm::phase_pair(double alpha, double beta, Parity a, Parity b) {
    ScalarTerm t;
    t.kind = Kind::phase_pair;
    t.alpha = alpha;
    t.beta = beta;
    t.a = std::move(a);
    t.b = std::move(b);
    return t;
}

ScalarTerm ScalarTerm::conj() const {
    ScalarTerm t = *this;
    switch (kind) {
        case Kind::node:
            t.alpha = -alpha;
            break;
        case Kind::half_pi:
            t.sign = -sign;
            break;
        case Kind::pi_pair:
            break;  // (-1)^(ab) is real
        case Kind::phase_pair:
            t.alpha = -alpha;
            t.beta = -beta;
            break;
    }
    return t;
}

cdouble phase_pair_value(double alpha, double beta, bool a, bool b) {
    cdouble ea = expi(alpha + (a ? kPi : 0.0));
    cdouble eb = expi(beta + (b ? kPi : 0.0));
    return 1.0 + ea + eb - ea * eb;
}

cdouble eval_scalar_term(const ScalarTerm &term, const std::vector<bool> &assignment) {
    bool a = term.a.eval(assignment);
    bool b = term.b.eval(assignment);
    switch (term.kind) {
        case ScalarTerm::Kind::node:
            return 1.0 + expi(term.alpha + (a ? kPi : 0.0));
        case ScalarTerm::Kind::half_pi:
            return a ? cdouble(0.0, term.sign > 0 ? 1.0 : -1.0) : cdouble(1.0, 0.0);
        case ScalarTerm::Kind::pi_pair:
            return (a && b) ? cdouble(-1.0, 0.0) : cdouble(1.0, 0.0);
        case ScalarTerm::Kind::phase_pair:
            return phase_pair_value(term.alpha, term.beta, a, b);
    }
    return {1.0, 0.0};
}

PhasePairForm to_phase_pair(const ScalarTerm &term) {
    PhasePairForm f;
    f.a = term.a;
    f.b = term.b;
    switch (term.kind) {
        case ScalarTerm::Kind::phase_pair:
            f.prefactor = 1.0;
            f.alpha = term.alpha;
            f.beta = term.beta;
            return f;
        case ScalarTerm::Kind::pi_pair:
            // h(0, 0; a, b) = 2 (-1)^(ab)
            f.prefactor = 0.5;
            f.alpha = 0.0;
            f.beta = 0.0;
            return f;
        case ScalarTerm::Kind::node:
            // h(alpha + pi/2, pi/2; a, 0) = (1+i) (1 + e^{i(alpha + a pi)})
            f.prefactor = 1.0 / cdouble(1.0, 1.0);
            f.alpha = term.alpha + kPi / 2;
            f.beta = kPi / 2;
            f.b = Parity();
            return f;
        case ScalarTerm::Kind::half_pi:
            // e^{+i a pi/2} = (1 + e^{i(-pi/2 + a pi)}) / (1 - i), and the
            // node embeds as above.
            {
                ScalarTerm n = ScalarTerm::node(term.sign > 0 ? -kPi / 2 : kPi / 2, term.a);
                f = to_phase_pair(n);
                f.prefactor /= term.sign > 0 ? cdouble(1.0, -1.0) : cdouble(1.0, 1.0);
                return f;
            }
    }
    return f;
}

void ScalarLedger::mul_const(cdouble c) {
    if (zero_) {
        return;
    }
    if (c == cdouble(0.0, 0.0)) {
        set_zero();
        return;
    }
    mant_ *= c;
    normalize();
}

void ScalarLedger::mul_sqrt2_pow(int64_t halves) {
    if (!zero_) {
        halves_ += halves;
    }
}

void ScalarLedger::add_term(ScalarTerm term) {
    if (zero_) {
        return;
    }
    // Parameter-free terms fold straight into the constant.
    if (term.a.empty() && term.b.empty()) {
        std::vector<bool> none;
        mul_const(eval_scalar_term(term, none));
        return;
    }
    terms_.push_back(std::move(term));
}

void ScalarLedger::set_zero() {
    zero_ = true;
    mant_ = 0.0;
    halves_ = 0;
    terms_.clear();
}

cdouble ScalarLedger::const_value() const {
    if (zero_) {
        return 0.0;
    }
    return mant_ * std::pow(2.0, static_cast<double>(halves_) / 2.0);
}

cdouble ScalarLedger::eval(const std::vector<bool> &assignment) const {
    if (zero_) {
        return 0.0;
    }
    cdouble v = const_value();
    for (const auto &t : terms_) {
        v *= eval_scalar_term(t, assignment);
    }
    return v;
}

ScalarLedger ScalarLedger::doubled() const {
    ScalarLedger d;
    if (zero_) {
        d.set_zero();
        return d;
    }
    d.mant_ = mant_ * std::conj(mant_);
    d.halves_ = 2 * halves_;
    for (const auto &t : terms_) {
        d.terms_.push_back(t);
        d.terms_.push_back(t.conj());
    }
    return d;
}

void ScalarLedger::clear() {
    mant_ = {1.0, 0.0};
    halves_ = 0;
    zero_ = false;
    terms_.clear();
}

void ScalarLedger::normalize() {
    double m = std::abs(mant_);
    while (m > 2.0) {
        mant_ *= 0.5;
        halves_ += 2;
        m *= 0.5;
    }
    while (m > 0.0 && m < 0.5) {
        mant_ *= 2.0;
        halves_ -= 2;
        m *= 2.0;
    }
}

}  // namespace zxsim
