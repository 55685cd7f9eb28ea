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

#include <complex>
#include <cstdint>
#include <vector>

#include "zxsim/phase.hpp"

namespace zxsim {

using cdouble = std::complex<double>;

/// One multiplicative factor of the diagram scalar whose value depends on
/// parities of the binary parameters.
struct ScalarTerm {
    enum class Kind { node, half_pi, pi_pair, phase_pair };

    Kind kind = Kind::node;
    double alpha = 0.0;  // radians
    double beta = 0.0;   // radians (phase_pair only)
    int sign = +1;       // half_pi only
    Parity a;
    Parity b;

    static ScalarTerm node(double alpha, Parity a);
    static ScalarTerm half_pi(int sign, Parity a);
    static ScalarTerm pi_pair(Parity a, Parity b);
    static ScalarTerm phase_pair(double alpha, double beta, Parity a, Parity b);

    ScalarTerm conj() const;
};

/// Value of a term with parities resolved against an assignment.
cdouble eval_scalar_term(const ScalarTerm &term, const std::vector<bool> &assignment);

/// The general two-parity factor 1 + e^{i(alpha+a pi)} + e^{i(beta+b pi)}
/// - e^{i(alpha+beta+a pi+b pi)}.
cdouble phase_pair_value(double alpha, double beta, bool a, bool b);

/// Rewrites a term as c * phase_pair(alpha, beta; a, b); every kind embeds.
struct PhasePairForm {
    cdouble prefactor;
    double alpha;
    double beta;
    Parity a;
    Parity b;
};
PhasePairForm to_phase_pair(const ScalarTerm &term);

/// Multiplicative scalar ledger. The constant is kept as mantissa times
/// 2^(half_pow2 / 2) so long rewrite sequences cannot overflow a double.
class ScalarLedger {
  public:
    ScalarLedger() = default;

    void mul_const(cdouble c);
    void mul_sqrt2_pow(int64_t halves);  // multiply by 2^(halves/2)
    void add_term(ScalarTerm term);
    void set_zero();

    bool is_zero() const { return zero_; }
    cdouble const_mantissa() const { return mant_; }
    int64_t half_pow2() const { return halves_; }
    const std::vector<ScalarTerm> &terms() const { return terms_; }

    /// Full constant including the power-of-two exponent. May overflow for
    /// extreme exponents; intended for small test diagrams.
    cdouble const_value() const;

    /// Evaluate the whole ledger at an assignment (constant included).
    cdouble eval(const std::vector<bool> &assignment) const;

    /// Ledger for the doubled diagram: conjugate copy folded in.
    ScalarLedger doubled() const;

    void clear();

  private:
    void normalize();

    cdouble mant_{1.0, 0.0};
    int64_t halves_ = 0;
    bool zero_ = false;
    std::vector<ScalarTerm> terms_;
};

}  // namespace zxsim
