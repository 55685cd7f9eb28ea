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

#include "zxsim/encode.hpp"

#include <algorithm>
#include <stdexcept>

namespace zxsim {

std::string encode_shots(const SampleRecord &rec, ShotFormat format, uint32_t first_output,
                         uint32_t output_count) {
    uint32_t last = std::min(rec.width, first_output + std::min(output_count,
                                                                rec.width - first_output));
    uint32_t width = last - first_output;
    std::string out;
    if (format == ShotFormat::ascii01) {
        out.reserve(rec.shots * (width + 1));
        for (size_t s = 0; s < rec.shots; s++) {
            for (uint32_t b = 0; b < width; b++) {
                out.push_back(rec.get(s, first_output + b) ? '1' : '0');
            }
            out.push_back('\n');
        }
        return out;
    }
    size_t bytes_per_shot = (width + 7) / 8;
    out.assign(rec.shots * bytes_per_shot, '\0');
    for (size_t s = 0; s < rec.shots; s++) {
        for (uint32_t b = 0; b < width; b++) {
            if (rec.get(s, first_output + b)) {
                out[s * bytes_per_shot + b / 8] |= static_cast<char>(1 << (b % 8));
            }
        }
    }
    return out;
}

std::vector<std::vector<bool>> decode_shots(const std::string &data, ShotFormat format,
                                            uint32_t width) {
    std::vector<std::vector<bool>> shots;
    if (format == ShotFormat::ascii01) {
        std::vector<bool> current;
        for (char c : data) {
            if (c == '\n') {
                if (!current.empty() || width == 0) {
                    if (current.size() != width) {
                        throw std::invalid_argument("shot line width mismatch");
                    }
                    shots.push_back(std::move(current));
                    current.clear();
                }
                continue;
            }
            if (c == '0' || c == '1') {
                current.push_back(c == '1');
            } else if (c != '\r') {
                throw std::invalid_argument("unexpected character in 01 data");
            }
        }
        if (!current.empty()) {
            if (current.size() != width) {
                throw std::invalid_argument("shot line width mismatch");
            }
            shots.push_back(std::move(current));
        }
        return shots;
    }
    size_t bytes_per_shot = (width + 7) / 8;
    if (bytes_per_shot == 0 || data.size() % bytes_per_shot != 0) {
        throw std::invalid_argument("b8 data length is not a multiple of the shot width");
    }
    size_t n = data.size() / bytes_per_shot;
    for (size_t s = 0; s < n; s++) {
        std::vector<bool> shot(width);
        for (uint32_t b = 0; b < width; b++) {
            shot[b] = (static_cast<unsigned char>(data[s * bytes_per_shot + b / 8]) >>
                       (b % 8)) &
                      1;
        }
        shots.push_back(std::move(shot));
    }
    return shots;
}

}  // namespace zxsim
