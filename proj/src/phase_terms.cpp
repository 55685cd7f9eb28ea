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

#include "zxsim/phase_terms.hpp"

#include <cmath>
#include <stdexcept>

namespace zxsim {

void PhaseTermTensors::rebase_exponent(int64_t target) {
    double scale = std::pow(2.0, static_cast<double>(exponent_halves - target) / 2.0);
    for (PhaseTerm &t : terms) {
        t.c *= scale;
    }
    exponent_halves = target;
}

PhaseTermTensors assemble_tensors(const std::vector<WeightedLedger> &inputs,
                                  uint32_t param_width) {
    PhaseTermTensors out;
    out.param_width = param_width;
    int64_t max_halves = 0;
    bool first = true;
    for (const WeightedLedger &in : inputs) {
        if (in.ledger->is_zero()) {
            continue;
        }
        if (first || in.ledger->half_pow2() > max_halves) {
            max_halves = in.ledger->half_pow2();
            first = false;
        }
    }
    out.exponent_halves = first ? 0 : max_halves;

    for (const WeightedLedger &in : inputs) {
        if (in.ledger->is_zero()) {
            continue;
        }
        PhaseTerm term;
        term.c = in.weight * in.ledger->const_mantissa() *
                 std::pow(2.0, static_cast<double>(in.ledger->half_pow2() - max_halves) / 2.0);
        for (const ScalarTerm &st : in.ledger->terms()) {
            PhasePairForm f = to_phase_pair(st);
            term.c *= f.prefactor;
            term.alpha.push_back(f.alpha);
            term.beta.push_back(f.beta);
            term.u.push_back(parity_to_row(f.a, param_width));
            term.v.push_back(parity_to_row(f.b, param_width));
            std::array<cdouble, 4> h;
            for (int ab = 0; ab < 4; ab++) {
                h[ab] = phase_pair_value(f.alpha, f.beta, (ab >> 1) & 1, ab & 1);
            }
            term.h_table.push_back(h);
        }
        out.terms.push_back(std::move(term));
    }
    return out;
}

void ParamBatch::resize(uint32_t params, size_t shots_) {
    shots = shots_;
    columns.assign(params, std::vector<uint64_t>((shots_ + 63) / 64, 0));
}

void ParamBatch::set(uint32_t param, size_t shot, bool v) {
    uint64_t mask = uint64_t(1) << (shot & 63);
    if (v) {
        columns[param][shot >> 6] |= mask;
    } else {
        columns[param][shot >> 6] &= ~mask;
    }
}

bool ParamBatch::get(uint32_t param, size_t shot) const {
    return (columns[param][shot >> 6] >> (shot & 63)) & 1;
}

BatchEvalResult eval_batch(const PhaseTermTensors &t, const ParamBatch &batch) {
    for (const PhaseTerm &term : t.terms) {
        for (const BitRow &r : term.u) {
            if (r.width() > t.param_width || t.param_width != batch.columns.size()) {
                throw std::invalid_argument("eval_batch: parameter width mismatch");
            }
        }
    }
    size_t shots = batch.shots;
    size_t words = batch.words();
    BatchEvalResult result;
    std::vector<cdouble> acc(shots, cdouble{0.0, 0.0});
    std::vector<cdouble> prod(shots);
    std::vector<uint64_t> a_bits(words), b_bits(words);

    for (const PhaseTerm &term : t.terms) {
        std::fill(prod.begin(), prod.end(), term.c);
        for (size_t k = 0; k < term.num_factors(); k++) {
            std::fill(a_bits.begin(), a_bits.end(), 0);
            std::fill(b_bits.begin(), b_bits.end(), 0);
            for (uint32_t p : term.u[k].set_bits()) {
                const auto &col = batch.columns[p];
                for (size_t w = 0; w < words; w++) {
                    a_bits[w] ^= col[w];
                }
            }
            for (uint32_t p : term.v[k].set_bits()) {
                const auto &col = batch.columns[p];
                for (size_t w = 0; w < words; w++) {
                    b_bits[w] ^= col[w];
                }
            }
            const auto &h = term.h_table[k];
            for (size_t s = 0; s < shots; s++) {
                int idx = static_cast<int>(((a_bits[s >> 6] >> (s & 63)) & 1) << 1 |
                                           ((b_bits[s >> 6] >> (s & 63)) & 1));
                prod[s] *= h[idx];
            }
        }
        for (size_t s = 0; s < shots; s++) {
            acc[s] += prod[s];
        }
    }

    result.values.resize(shots);
    for (size_t s = 0; s < shots; s++) {
        result.values[s] = acc[s].real();
        double mag = std::abs(acc[s]);
        if (mag > 0) {
            double ratio = std::abs(acc[s].imag()) / (mag + 1e-300);
            result.max_imag_ratio = std::max(result.max_imag_ratio, ratio);
        }
    }
    return result;
}

}  // namespace zxsim
