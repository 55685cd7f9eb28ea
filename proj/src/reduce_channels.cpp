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

#include "zxsim/error_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace zxsim {

namespace {

constexpr double kFactorTol = 1e-12;

struct WorkChannel {
    std::vector<BitRow> vectors;  // canonical: sorted, distinct, nonzero
    std::vector<double> table;    // 2^vectors.size()
};

// Rewrites a raw channel group over f-space effects: zero effects are
// marginalized out and repeated effects fold together over XOR.
std::optional<WorkChannel> canonicalize(const ChannelGroup &g,
                                        const std::vector<BitRow> &e_images) {
    std::vector<BitRow> images;
    for (uint32_t e : g.param_indices) {
        images.push_back(e_images[e]);
    }
    // Distinct nonzero effect vectors, sorted.
    std::vector<BitRow> vectors;
    for (const BitRow &v : images) {
        if (v.any() && std::find(vectors.begin(), vectors.end(), v) == vectors.end()) {
            vectors.push_back(v);
        }
    }
    std::sort(vectors.begin(), vectors.end());
    if (vectors.empty()) {
        return std::nullopt;
    }
    std::vector<double> table(size_t(1) << vectors.size(), 0.0);
    for (size_t outcome = 0; outcome < g.table.size(); outcome++) {
        if (g.table[outcome] == 0.0) {
            continue;
        }
        size_t folded = 0;
        for (size_t b = 0; b < images.size(); b++) {
            if (!((outcome >> b) & 1) || !images[b].any()) {
                continue;
            }
            size_t pos = static_cast<size_t>(
                std::find(vectors.begin(), vectors.end(), images[b]) - vectors.begin());
            folded ^= size_t(1) << pos;
        }
        table[folded] += g.table[outcome];
    }
    return WorkChannel{std::move(vectors), std::move(table)};
}

bool same_signature(const WorkChannel &a, const WorkChannel &b) {
    return a.vectors == b.vectors;
}

// Strict subset test on canonical (sorted distinct) vector lists.
bool signature_subset(const WorkChannel &small, const WorkChannel &big) {
    if (small.vectors.size() >= big.vectors.size()) {
        return false;
    }
    return std::includes(big.vectors.begin(), big.vectors.end(), small.vectors.begin(),
                         small.vectors.end());
}

// Embed `small` into `big`'s outcome space and convolve.
void absorb(WorkChannel &big, const WorkChannel &small) {
    std::vector<size_t> bit_map(small.vectors.size());
    for (size_t i = 0; i < small.vectors.size(); i++) {
        bit_map[i] = static_cast<size_t>(
            std::find(big.vectors.begin(), big.vectors.end(), small.vectors[i]) -
            big.vectors.begin());
    }
    std::vector<double> embedded(big.table.size(), 0.0);
    for (size_t o = 0; o < small.table.size(); o++) {
        size_t mapped = 0;
        for (size_t i = 0; i < bit_map.size(); i++) {
            if ((o >> i) & 1) {
                mapped |= size_t(1) << bit_map[i];
            }
        }
        embedded[mapped] += small.table[o];
    }
    big.table = xor_convolve(big.table, embedded);
}

// Exact product-of-Bernoullis test; returns per-bit marginals on success.
std::optional<std::vector<double>> factorize(const WorkChannel &c) {
    size_t n = c.vectors.size();
    std::vector<double> marginals(n, 0.0);
    for (size_t o = 0; o < c.table.size(); o++) {
        for (size_t b = 0; b < n; b++) {
            if ((o >> b) & 1) {
                marginals[b] += c.table[o];
            }
        }
    }
    for (size_t o = 0; o < c.table.size(); o++) {
        double expect = 1.0;
        for (size_t b = 0; b < n; b++) {
            expect *= ((o >> b) & 1) ? marginals[b] : 1.0 - marginals[b];
        }
        if (std::abs(expect - c.table[o]) > kFactorTol) {
            return std::nullopt;
        }
    }
    return marginals;
}

}  // namespace

std::vector<double> xor_convolve(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size()) {
        throw std::logic_error("xor_convolve size mismatch");
    }
    std::vector<double> out(a.size(), 0.0);
    for (size_t i = 0; i < a.size(); i++) {
        if (a[i] == 0.0) {
            continue;
        }
        for (size_t j = 0; j < b.size(); j++) {
            out[i ^ j] += a[i] * b[j];
        }
    }
    return out;
}

ErrorModel reduce_channels(const std::vector<ChannelGroup> &channels,
                           const std::vector<BitRow> &e_images, uint32_t f_width) {
    ErrorModel model;
    model.f_width = f_width;
    model.base_offset = BitRow(f_width);

    std::vector<WorkChannel> work;
    for (const ChannelGroup &g : channels) {
        if (auto c = canonicalize(g, e_images)) {
            work.push_back(std::move(*c));
        }
    }

    auto merge_and_absorb = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            // Identical-signature merging by XOR convolution.
            for (size_t i = 0; i < work.size(); i++) {
                for (size_t j = i + 1; j < work.size(); j++) {
                    if (same_signature(work[i], work[j])) {
                        work[i].table = xor_convolve(work[i].table, work[j].table);
                        work.erase(work.begin() + static_cast<long>(j));
                        changed = true;
                        j--;
                    }
                }
            }
            // Subset absorption, larger signatures first.
            std::stable_sort(work.begin(), work.end(),
                             [](const WorkChannel &a, const WorkChannel &b) {
                                 return a.vectors.size() > b.vectors.size();
                             });
            for (size_t i = 0; i < work.size() && !changed; i++) {
                for (size_t j = 0; j < work.size(); j++) {
                    if (i != j && signature_subset(work[j], work[i])) {
                        absorb(work[i], work[j]);
                        work.erase(work.begin() + static_cast<long>(j));
                        changed = true;
                        break;
                    }
                }
            }
        }
    };

    merge_and_absorb();

    // Factorize exact products into independent single-bit mechanisms, then
    // give merging another chance on the released singles.
    bool factored = true;
    while (factored) {
        factored = false;
        std::vector<WorkChannel> next;
        for (WorkChannel &c : work) {
            if (c.vectors.size() == 1) {
                next.push_back(std::move(c));
                continue;
            }
            if (auto marginals = factorize(c)) {
                for (size_t b = 0; b < c.vectors.size(); b++) {
                    WorkChannel single;
                    single.vectors = {c.vectors[b]};
                    single.table = {1.0 - (*marginals)[b], (*marginals)[b]};
                    next.push_back(std::move(single));
                }
                factored = true;
            } else {
                next.push_back(std::move(c));
            }
        }
        work = std::move(next);
        if (factored) {
            merge_and_absorb();
        }
    }

    // Deterministic output order: by signature.
    std::stable_sort(work.begin(), work.end(), [](const WorkChannel &a, const WorkChannel &b) {
        return a.vectors < b.vectors;
    });

    for (WorkChannel &c : work) {
        if (c.vectors.size() == 1) {
            double p = c.table[1];
            if (p <= 0.0) {
                continue;
            }
            if (p >= 1.0) {
                model.base_offset ^= c.vectors[0];
                continue;
            }
            ErrorMechanism m;
            m.f_vectors = std::move(c.vectors);
            m.probability = p;
            model.mechanisms.push_back(std::move(m));
        } else {
            ErrorMechanism m;
            m.f_vectors = std::move(c.vectors);
            m.table = std::move(c.table);
            model.mechanisms.push_back(std::move(m));
        }
    }
    return model;
}

}  // namespace zxsim
