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
#include <string>
#include <vector>

namespace zxsim {

/// XOR of a subset of binary parameters. Kept as a sorted index list so that
/// symmetric-difference (GF(2) addition) is a linear merge.
class Parity {
  public:
    Parity() = default;
    explicit Parity(std::vector<uint32_t> bits);
    static Parity single(uint32_t index);

    bool empty() const { return bits_.empty(); }
    size_t size() const { return bits_.size(); }
    const std::vector<uint32_t> &bits() const { return bits_; }

    /// GF(2) addition; duplicate indices cancel.
    Parity operator^(const Parity &other) const;
    Parity &operator^=(const Parity &other);
    bool operator==(const Parity &other) const { return bits_ == other.bits_; }
    bool operator<(const Parity &other) const { return bits_ < other.bits_; }

    /// Resolve against a concrete assignment (indexable as bool per index).
    bool eval(const std::vector<bool> &assignment) const;

    std::string str() const;

  private:
    std::vector<uint32_t> bits_;  // strictly increasing
};

/// Spider phase: exact part in units of pi/4 (mod 8), an optional generic
/// angle in radians for non-Clifford rotations, and a parity part that
/// contributes pi per odd parity.
struct Phase {
    int exact = 0;  // in [0, 8)
    std::optional<double> generic;
    Parity parity;

    Phase() = default;
    explicit Phase(int exact_quarter_turns) : exact(((exact_quarter_turns % 8) + 8) % 8) {}
    Phase(int exact_quarter_turns, Parity p)
        : exact(((exact_quarter_turns % 8) + 8) % 8), parity(std::move(p)) {}

    /// Builds a phase from an angle in radians, folding exact multiples of
    /// pi/4 into the exact part so that Clifford/magic tests stay exact.
    static Phase from_radians(double angle);
    static Phase pauli(Parity p) { return Phase(0, std::move(p)); }

    bool has_generic() const { return generic.has_value(); }
    bool is_zero() const { return exact == 0 && !generic && parity.empty(); }
    bool is_clifford() const { return !generic && exact % 2 == 0; }
    bool is_pauli() const { return !generic && (exact == 0 || exact == 4); }
    /// True for phases that are an odd multiple of pi/2 (+ any parity).
    bool is_proper_clifford() const { return !generic && (exact == 2 || exact == 6); }

    /// Constant part of the angle in radians (parity excluded).
    double const_radians() const;
    /// Angle in radians with the parity resolved against an assignment.
    double radians(const std::vector<bool> &assignment) const;

    Phase operator+(const Phase &other) const;
    Phase &operator+=(const Phase &other);
    Phase conj() const;
    bool operator==(const Phase &other) const;

    std::string str() const;
};

}  // namespace zxsim
