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
#include <cstdint>

namespace zxsim {

/// Philox4x32-10 counter block cipher. Splittable and stateless: draws are
/// keyed by (seed, stream) and addressed by a 128-bit counter, which makes
/// sampling deterministic regardless of thread scheduling.
class Philox {
  public:
    Philox(uint64_t seed, uint32_t stream)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32) ^ stream} {}

    /// Two uniform doubles in [0, 1) addressed by a 64-bit draw index.
    std::array<double, 2> uniform2_at(uint64_t index) const {
        std::array<uint32_t, 4> ctr = {static_cast<uint32_t>(index),
                                       static_cast<uint32_t>(index >> 32), 0x9e3779b9u, 0u};
        std::array<uint32_t, 4> r = block(ctr);
        uint64_t a = (uint64_t(r[0]) << 32) | r[1];
        uint64_t b = (uint64_t(r[2]) << 32) | r[3];
        return {static_cast<double>(a >> 11) * 0x1.0p-53,
                static_cast<double>(b >> 11) * 0x1.0p-53};
    }

    double uniform_at(uint64_t index) const { return uniform2_at(index)[0]; }

  private:
    static void round(std::array<uint32_t, 4> &ctr, const std::array<uint32_t, 2> &key) {
        constexpr uint64_t kMul0 = 0xD2511F53;
        constexpr uint64_t kMul1 = 0xCD9E8D57;
        uint64_t p0 = kMul0 * ctr[0];
        uint64_t p1 = kMul1 * ctr[2];
        std::array<uint32_t, 4> next = {
            static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
            static_cast<uint32_t>(p1),
            static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
            static_cast<uint32_t>(p0),
        };
        ctr = next;
    }

    std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr) const {
        constexpr uint32_t kWeyl0 = 0x9E3779B9;
        constexpr uint32_t kWeyl1 = 0xBB67AE85;
        std::array<uint32_t, 2> key = key_;
        for (int i = 0; i < 10; i++) {
            round(ctr, key);
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }

    std::array<uint32_t, 2> key_;
};

/// Sequential view over a Philox stream.
class RngStream {
  public:
    RngStream(uint64_t seed, uint32_t stream) : philox_(seed, stream) {}

    double uniform() { return philox_.uniform_at(next_++); }

  private:
    Philox philox_;
    uint64_t next_ = 0;
};

}  // namespace zxsim
