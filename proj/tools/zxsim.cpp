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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "zxsim/circuit.hpp"
#include "zxsim/compile.hpp"
#include "zxsim/encode.hpp"
#include "zxsim/sampler.hpp"

namespace {

std::string read_input(const std::string &path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open input file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string &path, const std::string &data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    out << data;
}

zxsim::ShotFormat parse_format(const std::string &name) {
    if (name == "01") {
        return zxsim::ShotFormat::ascii01;
    }
    if (name == "b8") {
        return zxsim::ShotFormat::b8;
    }
    throw std::runtime_error("unknown shot format '" + name + "' (expected 01 or b8)");
}

struct CommonArgs {
    std::string in_path;
    std::string out_path;
    uint64_t shots = 1000;
    uint64_t seed = 0;
    uint64_t batch_size = 65536;
    uint32_t threads = 0;
    std::string format = "01";
    double sparse_threshold = 8.0;
    bool force_dense = false;
};

void add_common(CLI::App *cmd, CommonArgs &args, bool sampling) {
    cmd->add_option("--in", args.in_path, "circuit file (default: stdin)");
    cmd->add_option("--out", args.out_path, "output file (default: stdout)");
    if (sampling) {
        cmd->add_option("--shots", args.shots, "number of shots");
        cmd->add_option("--seed", args.seed, "rng seed");
        cmd->add_option("--batch-size", args.batch_size, "shots per batch");
        cmd->add_option("--threads", args.threads, "worker threads (0 = all cores)");
        cmd->add_option("--format", args.format, "shot encoding: 01 or b8");
        cmd->add_option("--sparse-threshold", args.sparse_threshold,
                        "expected flips/shot below which the sparse path is used");
        cmd->add_flag("--force-dense", args.force_dense, "disable the sparse fast path");
    }
}

zxsim::SamplerOptions options_from(const CommonArgs &args) {
    zxsim::SamplerOptions opt;
    opt.seed = args.seed;
    opt.batch_size = args.batch_size;
    opt.threads = args.threads;
    opt.sparse_threshold = args.sparse_threshold;
    opt.force_dense = args.force_dense;
    return opt;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"ZX-based sampler for noisy stabilizer-plus-rotation circuits"};
    app.require_subcommand(1);

    CommonArgs sample_args, det_args, prob_args, compile_args, dem_args, stats_args;
    bool separate_observables = false;
    std::string obs_out;
    std::string outcome;
    std::string prob_mode = "auto";

    CLI::App *sample = app.add_subcommand("sample", "sample raw measurement outcomes");
    add_common(sample, sample_args, true);

    CLI::App *det = app.add_subcommand("detector-sample", "sample detector/observable bits");
    add_common(det, det_args, true);
    det->add_flag("--separate-observables", separate_observables,
                  "write observables to a second file");
    det->add_option("--obs-out", obs_out, "observable output file (with --separate-observables)");

    CLI::App *prob = app.add_subcommand("prob", "exact probability of one outcome");
    add_common(prob, prob_args, false);
    prob->add_option("--outcome", outcome, "outcome bitstring, e.g. 0110")->required();
    prob->add_option("--mode", prob_mode, "detectors|measurements|auto");

    CLI::App *compile_cmd = app.add_subcommand("compile", "compile and print sampler stats");
    add_common(compile_cmd, compile_args, false);
    std::string compile_mode = "detectors";
    compile_cmd->add_option("--mode", compile_mode, "detectors|measurements");

    CLI::App *dem = app.add_subcommand("export-dem", "write the detector error model");
    add_common(dem, dem_args, false);

    CLI::App *stats = app.add_subcommand("stats", "print circuit statistics");
    add_common(stats, stats_args, false);

    CLI11_PARSE(app, argc, argv);

    try {
        using namespace zxsim;
        if (sample->parsed()) {
            Circuit c = parse_circuit(read_input(sample_args.in_path));
            CompiledSampler cs = compile_circuit(c, SampleMode::measurements);
            SampleRecord rec = sample_measurements(cs, sample_args.shots,
                                                   options_from(sample_args));
            write_output(sample_args.out_path,
                         encode_shots(rec, parse_format(sample_args.format)));
        } else if (det->parsed()) {
            Circuit c = parse_circuit(read_input(det_args.in_path));
            CompiledSampler cs = compile_circuit(c, SampleMode::detectors);
            SampleRecord rec = sample_detectors(cs, det_args.shots, options_from(det_args));
            ShotFormat fmt = parse_format(det_args.format);
            if (separate_observables) {
                if (obs_out.empty()) {
                    throw std::runtime_error("--separate-observables requires --obs-out");
                }
                write_output(det_args.out_path, encode_shots(rec, fmt, 0, cs.num_detectors));
                write_output(obs_out,
                             encode_shots(rec, fmt, cs.num_detectors, cs.num_observables));
            } else {
                write_output(det_args.out_path, encode_shots(rec, fmt));
            }
        } else if (prob->parsed()) {
            Circuit c = parse_circuit(read_input(prob_args.in_path));
            SampleMode mode;
            if (prob_mode == "detectors") {
                mode = SampleMode::detectors;
            } else if (prob_mode == "measurements") {
                mode = SampleMode::measurements;
            } else {
                mode = (c.detectors.empty() && c.observables.empty())
                           ? SampleMode::measurements
                           : SampleMode::detectors;
            }
            CompiledSampler cs = compile_circuit(c, mode);
            std::vector<bool> bits;
            for (char ch : outcome) {
                if (ch != '0' && ch != '1') {
                    throw std::runtime_error("outcome must be a string of 0s and 1s");
                }
                bits.push_back(ch == '1');
            }
            double p = probability_of(cs, bits);
            std::ostringstream ss;
            ss.precision(12);
            ss << p << "\n";
            write_output(prob_args.out_path, ss.str());
        } else if (compile_cmd->parsed()) {
            Circuit c = parse_circuit(read_input(compile_args.in_path));
            SampleMode mode = compile_mode == "measurements" ? SampleMode::measurements
                                                             : SampleMode::detectors;
            CompiledSampler cs = compile_circuit(c, mode);
            write_output(compile_args.out_path, format_stats(cs));
        } else if (dem->parsed()) {
            Circuit c = parse_circuit(read_input(dem_args.in_path));
            CompiledSampler cs = compile_circuit(c, SampleMode::detectors);
            write_output(dem_args.out_path, export_dem(cs));
        } else if (stats->parsed()) {
            Circuit c = parse_circuit(read_input(stats_args.in_path));
            CircuitStats s = circuit_stats(c);
            std::ostringstream ss;
            ss << "num_gates=" << s.num_gates << "\n";
            ss << "num_magic=" << s.num_magic << "\n";
            ss << "num_measurements=" << s.num_measurements << "\n";
            ss << "num_error_locations=" << s.num_error_locations << "\n";
            ss << "num_detectors=" << s.num_detectors << "\n";
            ss << "num_observables=" << s.num_observables << "\n";
            write_output(stats_args.out_path, ss.str());
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
