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

#include <cstdint>
#include <optional>
#include <vector>

#include "zxsim/phase.hpp"

namespace zxsim {

/// Bit-packed GF(2) row vector.
class BitRow {
  public:
    BitRow() = default;
    explicit BitRow(uint32_t width) : width_(width), words_((width + 63) / 64, 0) {}

    uint32_t width() const { return width_; }
    bool get(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(uint32_t i, bool v) {
        uint64_t mask = uint64_t(1) << (i & 63);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(uint32_t i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

    BitRow &operator^=(const BitRow &o);
    bool any() const;
    uint32_t popcount() const;
    /// Index of the lowest set bit, if any.
    std::optional<uint32_t> first_set() const;
    std::vector<uint32_t> set_bits() const;

    bool operator==(const BitRow &o) const { return words_ == o.words_; }
    bool operator<(const BitRow &o) const;

    const std::vector<uint64_t> &words() const { return words_; }

  private:
    uint32_t width_ = 0;
    std::vector<uint64_t> words_;
};

/// Incremental GF(2) row basis with pivot bookkeeping; rows inserted in
/// order form the independent basis (the rows of the e-to-f transform).
class Gf2Basis {
  public:
    explicit Gf2Basis(uint32_t width) : width_(width) {}

    /// Inserts a vector; returns its new basis index or nullopt if it was
    /// already in the span.
    std::optional<uint32_t> insert(const BitRow &v);

    /// Expresses a spanned vector as a set of basis indices (f indices).
    /// Vectors outside the span raise.
    std::vector<uint32_t> express(const BitRow &v) const;

    uint32_t rank() const { return static_cast<uint32_t>(rows_.size()); }
    uint32_t width() const { return width_; }
    /// Original (uneliminated) basis rows: row i is f_i as a parity over e.
    const std::vector<BitRow> &rows() const { return rows_; }

    /// Image of an e-space vector under the transform: bit i of the result
    /// is rows()[i] . v over GF(2).
    BitRow apply(const BitRow &e_vector) const;

  private:
    struct EchelonRow {
        BitRow row;          // reduced form
        BitRow combination;  // which original rows sum to `row`
        uint32_t pivot;
    };
    uint32_t width_;
    std::vector<BitRow> rows_;
    std::vector<EchelonRow> echelon_;
};

/// Parity (a set of e indices) packed into a BitRow of the given width.
BitRow parity_to_row(const Parity &p, uint32_t width);

}  // namespace zxsim
