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

#include "zxsim/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace zxsim {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kQuarterSnap = 1e-12;
}  // namespace

Parity::Parity(std::vector<uint32_t> bits) : bits_(std::move(bits)) {
    std::sort(bits_.begin(), bits_.end());
    // XOR semantics: an index appearing twice cancels.
    std::vector<uint32_t> out;
    size_t i = 0;
    while (i < bits_.size()) {
        size_t j = i;
        while (j < bits_.size() && bits_[j] == bits_[i]) {
            j++;
        }
        if ((j - i) % 2 == 1) {
            out.push_back(bits_[i]);
        }
        i = j;
    }
    bits_ = std::move(out);
}

Parity Parity::single(uint32_t index) {
    Parity p;
    p.bits_.push_back(index);
    return p;
}

Parity Parity::operator^(const Parity &other) const {
    Parity result;
    result.bits_.reserve(bits_.size() + other.bits_.size());
    std::set_symmetric_difference(bits_.begin(), bits_.end(), other.bits_.begin(),
                                  other.bits_.end(), std::back_inserter(result.bits_));
    return result;
}

Parity &Parity::operator^=(const Parity &other) {
    *this = *this ^ other;
    return *this;
}

bool Parity::eval(const std::vector<bool> &assignment) const {
    bool v = false;
    for (uint32_t b : bits_) {
        v ^= (b < assignment.size()) && assignment[b];
    }
    return v;
}

std::string Parity::str() const {
    if (bits_.empty()) {
        return "0";
    }
    std::ostringstream ss;
    for (size_t i = 0; i < bits_.size(); i++) {
        if (i) {
            ss << "^";
        }
        ss << "x" << bits_[i];
    }
    return ss.str();
}

Phase Phase::from_radians(double angle) {
    double quarters = angle / (kPi / 4);
    double nearest = std::round(quarters);
    Phase p;
    if (std::abs(quarters - nearest) < kQuarterSnap) {
        p.exact = static_cast<int>(std::llround(nearest)) % 8;
        if (p.exact < 0) {
            p.exact += 8;
        }
    } else {
        p.generic = angle;
    }
    return p;
}

double Phase::const_radians() const {
    return exact * (kPi / 4) + (generic ? *generic : 0.0);
}

double Phase::radians(const std::vector<bool> &assignment) const {
    return const_radians() + (parity.eval(assignment) ? kPi : 0.0);
}

Phase Phase::operator+(const Phase &other) const {
    Phase result = *this;
    result += other;
    return result;
}

Phase &Phase::operator+=(const Phase &other) {
    exact = (exact + other.exact) % 8;
    if (other.generic) {
        double g = (generic ? *generic : 0.0) + *other.generic;
        generic.reset();
        // Re-snap: generic contributions may sum to an exact multiple of pi/4.
        Phase folded = Phase::from_radians(g);
        exact = (exact + folded.exact) % 8;
        generic = folded.generic;
    }
    parity ^= other.parity;
    return *this;
}

Phase Phase::conj() const {
    Phase result;
    result.exact = (8 - exact) % 8;
    if (generic) {
        result.generic = -*generic;
    }
    result.parity = parity;  // a pi flip is its own conjugate
    return result;
}

bool Phase::operator==(const Phase &other) const {
    if (exact != other.exact || parity.bits() != other.parity.bits()) {
        return false;
    }
    if (generic.has_value() != other.generic.has_value()) {
        return false;
    }
    return !generic || *generic == *other.generic;
}

std::string Phase::str() const {
    std::ostringstream ss;
    ss << exact << "/4pi";
    if (generic) {
        ss << "+" << *generic << "rad";
    }
    if (!parity.empty()) {
        ss << "+(" << parity.str() << ")pi";
    }
    return ss.str();
}

}  // namespace zxsim
