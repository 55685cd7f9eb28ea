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

#include <string>
#include <vector>

#include "zxsim/sampler.hpp"

namespace zxsim {

enum class ShotFormat : uint8_t { ascii01, b8 };

/// Encodes shots in record order. ascii01: one line per shot, one character
/// per bit. b8: per shot, bits packed 8 per byte little-endian within each
/// byte, shots concatenated.
std::string encode_shots(const SampleRecord &rec, ShotFormat format,
                         uint32_t first_output = 0, uint32_t output_count = UINT32_MAX);

/// Inverse of encode_shots given the bit width per shot.
std::vector<std::vector<bool>> decode_shots(const std::string &data, ShotFormat format,
                                            uint32_t width);

}  // namespace zxsim
