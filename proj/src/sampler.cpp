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

#include "zxsim/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "zxsim/rng.hpp"

namespace zxsim {

namespace {

constexpr double kRatioEps = 1e-6;
constexpr uint32_t kAutoStreamBase = 0x80000000u;

// Stream ids: mechanisms use their index; autoregressive draws are keyed by
// (component, chain position) in a disjoint range.
uint32_t auto_stream(uint32_t component, uint32_t pos) {
    return kAutoStreamBase ^ (component << 12) ^ pos;
}

bool parity_of(const std::vector<uint32_t> &bits, const ParamBatch &batch, size_t shot) {
    bool v = false;
    for (uint32_t b : bits) {
        v ^= batch.get(b, shot);
    }
    return v;
}

// Per-batch sampling core shared by both modes. Writes output bits for
// shots [first, first + batch.shots) into `rec` (word-aligned ranges).
void run_batch(const CompiledSampler &cs, const SamplerOptions &opt, size_t first_shot,
               ParamBatch &batch, SampleRecord &rec) {
    size_t shots = batch.shots;
    size_t words = batch.words();
    size_t word0 = first_shot >> 6;

    sample_error_batch(cs, opt.seed, first_shot, batch);

    // Direct outputs: parity over f columns plus the noiseless constant.
    for (const DirectOutput &d : cs.direct) {
        std::vector<uint64_t> acc(words, d.flip_const ? ~uint64_t(0) : 0);
        for (uint32_t f : d.f_bits) {
            for (size_t w = 0; w < words; w++) {
                acc[w] ^= batch.columns[f][w];
            }
        }
        for (size_t w = 0; w < words; w++) {
            rec.columns[d.output_index][word0 + w] = acc[w];
        }
    }

    // Autoregressive components, one conditional bit at a time.
    for (uint32_t ci = 0; ci < cs.components.size(); ci++) {
        const AutoComponent &ac = cs.components[ci];
        for (uint32_t pos = 0; pos < ac.output_indices.size(); pos++) {
            std::fill(batch.columns[cs.f_width + pos].begin(),
                      batch.columns[cs.f_width + pos].end(), 0);
        }
        BatchEvalResult prev = eval_batch(ac.normalization, batch);
        for (uint32_t pos = 0; pos < ac.output_indices.size(); pos++) {
            BatchEvalResult cur = eval_batch(ac.marginals[pos], batch);
            Philox rng(opt.seed, auto_stream(ci, pos));
            uint32_t out = ac.output_indices[pos];
            for (size_t s = 0; s < shots; s++) {
                double ratio = cur.values[s] / prev.values[s];
                if (!(ratio > -kRatioEps && ratio < 1.0 + kRatioEps)) {
                    throw std::runtime_error(
                        "autoregressive ratio outside [0, 1]: numeric breakdown");
                }
                ratio = std::min(1.0, std::max(0.0, ratio));
                bool bit = !(rng.uniform_at(first_shot + s) < ratio);
                if (bit) {
                    batch.set(cs.f_width + pos, s, true);
                    rec.columns[out][word0 + (s >> 6)] |= uint64_t(1) << (s & 63);
                    prev.values[s] -= cur.values[s];
                } else {
                    prev.values[s] = cur.values[s];
                }
            }
        }
    }
}

bool sparse_eligible(const CompiledSampler &cs, const SamplerOptions &opt) {
    if (opt.force_dense || !cs.stats.pure_clifford_deterministic) {
        return false;
    }
    double expected_flips = 0;
    for (size_t m = 0; m < cs.error_model.mechanisms.size(); m++) {
        const ErrorMechanism &mech = cs.error_model.mechanisms[m];
        if (mech.joint() || mech.probability >= 1.0) {
            return false;
        }
        expected_flips += mech.probability * static_cast<double>(cs.flips.columns[m].size());
    }
    return expected_flips < opt.sparse_threshold;
}

SampleRecord sample_outputs(const CompiledSampler &cs, size_t shots,
                            const SamplerOptions &opt) {
    SampleRecord rec;
    rec.shots = shots;
    rec.width = cs.num_outputs;
    size_t total_words = (shots + 63) / 64;
    rec.columns.assign(cs.num_outputs, std::vector<uint64_t>(total_words, 0));
    if (shots == 0) {
        return rec;
    }

    if (sparse_eligible(cs, opt)) {
        // Constant part per output, then the sparse flip stream.
        for (const DirectOutput &d : cs.direct) {
            bool base = d.flip_const;
            for (uint32_t f : d.f_bits) {
                base ^= cs.error_model.base_offset.get(f);
            }
            if (base) {
                rec.columns[d.output_index].assign(total_words, ~uint64_t(0));
            }
        }
        for (const FlipEvent &ev : geometric_stream(cs.error_model, opt.seed, shots)) {
            for (uint32_t out : cs.flips.columns[ev.mechanism]) {
                rec.columns[out][ev.shot >> 6] ^= uint64_t(1) << (ev.shot & 63);
            }
        }
        return rec;
    }

    size_t batch_size = std::max<size_t>(64, (opt.batch_size + 63) & ~size_t(63));
    size_t num_batches = (shots + batch_size - 1) / batch_size;
    uint32_t max_out = 0;
    for (const AutoComponent &ac : cs.components) {
        max_out = std::max(max_out, static_cast<uint32_t>(ac.output_indices.size()));
    }
    uint32_t batch_width = cs.f_width + max_out;

    uint32_t threads = opt.threads ? opt.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<uint32_t>(threads, static_cast<uint32_t>(num_batches)));

    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&]() {
        ParamBatch batch(batch_width, 0);
        for (;;) {
            size_t b = next.fetch_add(1);
            if (b >= num_batches || failed.load()) {
                return;
            }
            size_t first = b * batch_size;
            size_t count = std::min(batch_size, shots - first);
            try {
                batch.resize(batch_width, count);
                run_batch(cs, opt, first, batch, rec);
            } catch (const std::exception &e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed.store(true);
                error_message = e.what();
                return;
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (uint32_t t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failed.load()) {
        throw std::runtime_error(error_message);
    }

    // Trailing bits beyond `shots` stay zero for stable b8 encodings.
    size_t tail = shots & 63;
    if (tail) {
        uint64_t mask = (uint64_t(1) << tail) - 1;
        for (auto &col : rec.columns) {
            col.back() &= mask;
        }
    }
    return rec;
}

}  // namespace

std::vector<FlipEvent> geometric_stream(const ErrorModel &model, uint64_t seed, size_t shots) {
    std::vector<FlipEvent> events;
    for (uint32_t m = 0; m < model.mechanisms.size(); m++) {
        const ErrorMechanism &mech = model.mechanisms[m];
        if (mech.joint()) {
            throw std::invalid_argument("geometric_stream requires factorized mechanisms");
        }
        double p = mech.probability;
        if (p <= 0.0) {
            continue;
        }
        RngStream rng(seed, m);
        if (p >= 1.0) {
            for (size_t s = 0; s < shots; s++) {
                events.push_back(FlipEvent{s, m});
            }
            continue;
        }
        double log1mp = std::log1p(-p);
        size_t pos = 0;
        for (;;) {
            double u = rng.uniform();
            if (u <= 0.0) {
                u = std::numeric_limits<double>::min();
            }
            double gap = std::floor(std::log(u) / log1mp);
            if (gap >= static_cast<double>(shots - pos)) {
                break;
            }
            pos += static_cast<size_t>(gap);
            events.push_back(FlipEvent{pos, m});
            pos++;
            if (pos >= shots) {
                break;
            }
        }
    }
    std::sort(events.begin(), events.end(), [](const FlipEvent &a, const FlipEvent &b) {
        return a.shot != b.shot ? a.shot < b.shot : a.mechanism < b.mechanism;
    });
    return events;
}

void sample_error_batch(const CompiledSampler &cs, uint64_t seed, size_t first_shot,
                        ParamBatch &batch) {
    size_t shots = batch.shots;
    size_t words = batch.words();
    for (uint32_t f = 0; f < cs.f_width; f++) {
        std::fill(batch.columns[f].begin(), batch.columns[f].end(),
                  cs.error_model.base_offset.get(f) ? ~uint64_t(0) : 0);
    }
    std::vector<uint64_t> fired(words);
    for (uint32_t m = 0; m < cs.error_model.mechanisms.size(); m++) {
        const ErrorMechanism &mech = cs.error_model.mechanisms[m];
        Philox rng(seed, m);
        if (!mech.joint()) {
            std::fill(fired.begin(), fired.end(), 0);
            for (size_t s = 0; s < shots; s++) {
                if (rng.uniform_at(first_shot + s) < mech.probability) {
                    fired[s >> 6] |= uint64_t(1) << (s & 63);
                }
            }
            for (uint32_t f : mech.f_vectors[0].set_bits()) {
                for (size_t w = 0; w < words; w++) {
                    batch.columns[f][w] ^= fired[w];
                }
            }
        } else {
            // Inverse-CDF draw over the joint table per shot.
            for (size_t s = 0; s < shots; s++) {
                double u = rng.uniform_at(first_shot + s);
                double acc = 0.0;
                size_t outcome = 0;
                for (size_t o = 0; o < mech.table.size(); o++) {
                    acc += mech.table[o];
                    if (u < acc) {
                        outcome = o;
                        break;
                    }
                }
                for (size_t b = 0; b < mech.f_vectors.size(); b++) {
                    if ((outcome >> b) & 1) {
                        for (uint32_t f : mech.f_vectors[b].set_bits()) {
                            batch.set(f, s, !batch.get(f, s));
                        }
                    }
                }
            }
        }
    }
}

SampleRecord sample_detectors(const CompiledSampler &cs, size_t shots,
                              const SamplerOptions &opt) {
    if (cs.mode != SampleMode::detectors) {
        throw std::invalid_argument("sampler was compiled in measurement mode");
    }
    return sample_outputs(cs, shots, opt);
}

SampleRecord sample_measurements(const CompiledSampler &cs, size_t shots,
                                 const SamplerOptions &opt) {
    if (cs.mode != SampleMode::measurements) {
        throw std::invalid_argument("sampler was compiled in detector mode");
    }
    return sample_outputs(cs, shots, opt);
}

namespace {

double outcome_probability_given(const CompiledSampler &cs, const std::vector<bool> &outcome,
                                 const BitRow &f) {
    double p = 1.0;
    for (const DirectOutput &d : cs.direct) {
        bool bit = d.flip_const;
        for (uint32_t fb : d.f_bits) {
            bit ^= f.get(fb);
        }
        if (bit != outcome[d.output_index]) {
            return 0.0;
        }
    }
    for (const AutoComponent &ac : cs.components) {
        uint32_t n = static_cast<uint32_t>(ac.output_indices.size());
        ParamBatch batch(cs.f_width + n, 1);
        for (uint32_t fb = 0; fb < cs.f_width; fb++) {
            batch.set(fb, 0, f.get(fb));
        }
        double norm = eval_batch(ac.normalization, batch).values[0];
        if (!(norm > 0.0)) {
            throw std::runtime_error("component normalization is not positive");
        }
        double prev = norm;
        for (uint32_t pos = 0; pos < n; pos++) {
            double p0 = eval_batch(ac.marginals[pos], batch).values[0];
            bool bit = outcome[ac.output_indices[pos]];
            prev = bit ? prev - p0 : p0;
            batch.set(cs.f_width + pos, 0, bit);
        }
        p *= prev / norm;
    }
    return p;
}

}  // namespace

double probability_of_at(const CompiledSampler &cs, const std::vector<bool> &outcome,
                         const BitRow &f_assignment) {
    if (outcome.size() != cs.num_outputs) {
        throw std::invalid_argument("outcome length must match the output count");
    }
    BitRow f = f_assignment;
    f ^= cs.error_model.base_offset;
    return outcome_probability_given(cs, outcome, f);
}

double probability_of(const CompiledSampler &cs, const std::vector<bool> &outcome) {
    if (outcome.size() != cs.num_outputs) {
        throw std::invalid_argument("outcome length must match the output count");
    }
    double entropy_bits = 0;
    for (const ErrorMechanism &m : cs.error_model.mechanisms) {
        entropy_bits += m.joint() ? std::log2(static_cast<double>(m.table.size())) : 1.0;
    }
    if (entropy_bits > 20.0) {
        throw std::invalid_argument("noise entropy guard exceeded for exact marginalization");
    }

    // Kahan-compensated enumeration over mechanism outcomes.
    double sum = 0.0, carry = 0.0;
    std::vector<const ErrorMechanism *> mechs;
    for (const auto &m : cs.error_model.mechanisms) {
        mechs.push_back(&m);
    }
    BitRow f = cs.error_model.base_offset;

    std::function<void(size_t, double)> walk = [&](size_t idx, double weight) {
        if (weight == 0.0) {
            return;
        }
        if (idx == mechs.size()) {
            double term = weight * outcome_probability_given(cs, outcome, f);
            double y = term - carry;
            double t = sum + y;
            carry = (t - sum) - y;
            sum = t;
            return;
        }
        const ErrorMechanism &m = *mechs[idx];
        if (!m.joint()) {
            walk(idx + 1, weight * (1.0 - m.probability));
            f ^= m.f_vectors[0];
            walk(idx + 1, weight * m.probability);
            f ^= m.f_vectors[0];
            return;
        }
        for (size_t o = 0; o < m.table.size(); o++) {
            if (m.table[o] == 0.0) {
                continue;
            }
            for (size_t b = 0; b < m.f_vectors.size(); b++) {
                if ((o >> b) & 1) {
                    f ^= m.f_vectors[b];
                }
            }
            walk(idx + 1, weight * m.table[o]);
            for (size_t b = 0; b < m.f_vectors.size(); b++) {
                if ((o >> b) & 1) {
                    f ^= m.f_vectors[b];
                }
            }
        }
    };
    walk(0, 1.0);
    return sum;
}

}  // namespace zxsim
