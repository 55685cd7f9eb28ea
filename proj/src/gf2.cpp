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

#include "zxsim/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace zxsim {

BitRow &BitRow::operator^=(const BitRow &o) {
    if (o.words_.size() != words_.size()) {
        throw std::logic_error("BitRow width mismatch");
    }
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] ^= o.words_[i];
    }
    return *this;
}

bool BitRow::any() const {
    for (uint64_t w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

uint32_t BitRow::popcount() const {
    uint32_t n = 0;
    for (uint64_t w : words_) {
        n += static_cast<uint32_t>(std::popcount(w));
    }
    return n;
}

std::optional<uint32_t> BitRow::first_set() const {
    for (size_t i = 0; i < words_.size(); i++) {
        if (words_[i]) {
            return static_cast<uint32_t>(i * 64 + std::countr_zero(words_[i]));
        }
    }
    return std::nullopt;
}

std::vector<uint32_t> BitRow::set_bits() const {
    std::vector<uint32_t> out;
    for (size_t i = 0; i < words_.size(); i++) {
        uint64_t w = words_[i];
        while (w) {
            out.push_back(static_cast<uint32_t>(i * 64 + std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

bool BitRow::operator<(const BitRow &o) const {
    for (size_t i = 0; i < words_.size() && i < o.words_.size(); i++) {
        if (words_[i] != o.words_[i]) {
            // Order by the lowest differing bit.
            uint64_t diff = words_[i] ^ o.words_[i];
            uint64_t low = diff & ~(diff - 1);
            return (words_[i] & low) == 0;
        }
    }
    return words_.size() < o.words_.size();
}

std::optional<uint32_t> Gf2Basis::insert(const BitRow &v) {
    BitRow reduced = v;
    std::vector<uint32_t> used;
    for (const EchelonRow &er : echelon_) {
        if (reduced.get(er.pivot)) {
            reduced ^= er.row;
            for (uint32_t b : er.combination.set_bits()) {
                used.push_back(b);
            }
        }
    }
    auto pivot = reduced.first_set();
    if (!pivot) {
        return std::nullopt;
    }
    uint32_t index = static_cast<uint32_t>(rows_.size());
    rows_.push_back(v);
    BitRow combo(index + 1);
    for (uint32_t b : used) {
        combo.flip(b);
    }
    combo.flip(index);
    echelon_.push_back(EchelonRow{std::move(reduced), std::move(combo), *pivot});
    return index;
}

std::vector<uint32_t> Gf2Basis::express(const BitRow &v) const {
    BitRow reduced = v;
    BitRow combo(static_cast<uint32_t>(rows_.size()));
    for (const EchelonRow &er : echelon_) {
        if (reduced.get(er.pivot)) {
            reduced ^= er.row;
            for (uint32_t b : er.combination.set_bits()) {
                combo.flip(b);
            }
        }
    }
    if (reduced.any()) {
        throw std::logic_error("parity not expressible in the f basis");
    }
    return combo.set_bits();
}

BitRow Gf2Basis::apply(const BitRow &e_vector) const {
    BitRow out(rank());
    for (uint32_t i = 0; i < rows_.size(); i++) {
        const auto &rw = rows_[i].words();
        const auto &vw = e_vector.words();
        uint64_t acc = 0;
        for (size_t k = 0; k < rw.size() && k < vw.size(); k++) {
            acc ^= rw[k] & vw[k];
        }
        out.set(i, std::popcount(acc) & 1);
    }
    return out;
}

BitRow parity_to_row(const Parity &p, uint32_t width) {
    BitRow r(width);
    for (uint32_t b : p.bits()) {
        r.set(b, true);
    }
    return r;
}

}  // namespace zxsim
