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

#include <array>

#include "zxsim/gf2.hpp"
#include "zxsim/scalar.hpp"

namespace zxsim {

/// One stabilizer term: a constant times a product of phase-pair factors
/// h(alpha_k, beta_k; a_k, b_k) whose parities are selected by the bit rows
/// u_k, v_k over the parameters.
struct PhaseTerm {
    cdouble c;
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<BitRow> u;
    std::vector<BitRow> v;
    // Evaluation table: h values indexed by (a << 1) | b.
    std::vector<std::array<cdouble, 4>> h_table;

    size_t num_factors() const { return alpha.size(); }
};

/// Flat sum-of-Clifford-terms form of a parameterized scalar. All values
/// carry a common factor 2^(exponent_halves / 2) that is kept symbolic so
/// magnitudes stay in double range.
struct PhaseTermTensors {
    uint32_t param_width = 0;
    int64_t exponent_halves = 0;
    std::vector<PhaseTerm> terms;

    /// Rescales so the stored exponent equals `target` (values absorb the
    /// difference).
    void rebase_exponent(int64_t target);
};

/// Builds the tensors from weighted reduced ledgers. Every scalar-term kind
/// embeds into phase-pair form; parities must already live in the packed
/// parameter space.
struct WeightedLedger {
    cdouble weight;
    const ScalarLedger *ledger;
};
PhaseTermTensors assemble_tensors(const std::vector<WeightedLedger> &terms,
                                  uint32_t param_width);

/// Column-major bit batch: one word row per parameter, shots packed 64 per
/// word.
struct ParamBatch {
    size_t shots = 0;
    std::vector<std::vector<uint64_t>> columns;

    explicit ParamBatch(uint32_t params = 0, size_t shots_ = 0) { resize(params, shots_); }
    void resize(uint32_t params, size_t shots_);
    size_t words() const { return (shots + 63) / 64; }
    void set(uint32_t param, size_t shot, bool v);
    bool get(uint32_t param, size_t shot) const;
};

struct BatchEvalResult {
    std::vector<double> values;  // real parts, scaled by 2^(exponent/2)
    double max_imag_ratio = 0.0;
};

/// P_l = sum_t c_t prod_k h(...; a_kl, b_kl) for every shot l, computed with
/// bit-packed parity accumulation.
BatchEvalResult eval_batch(const PhaseTermTensors &t, const ParamBatch &batch);

}  // namespace zxsim
