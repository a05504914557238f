// Copyright 2026 The chancmp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <iostream>

#include "chancmp/errors.h"
#include "chancmp/toolkit_io.h"
#include "commands.h"

using namespace chancmp_cli;

namespace {

void add_common(CLI::App *cmd, CommonFlags &flags, bool randomized) {
    if (randomized) {
        cmd->add_option("--seed", flags.seed, "Seed for every randomized step");
        cmd->add_option("--trials", flags.trials, "Number of sampled checks");
    }
    cmd->add_option("--tol", flags.tol, "Decision tolerance");
    cmd->add_option("--out", flags.out, "Write the resulting document here");
    cmd->add_option("--format", flags.format, "Report format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::Text}, {"machine", Format::Machine}}));
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Compare noisy channels by degradability and conditional min-entropy"};
    app.require_subcommand(1);
    CommonFlags flags;

    std::string file_a, file_b;
    auto *compare = app.add_subcommand("compare", "Decide whether channel A can be degraded into channel B");
    compare->add_option("A", file_a, "Channel document")->required();
    compare->add_option("B", file_b, "Channel document")->required();
    add_common(compare, flags, true);

    std::string entropy_file;
    auto *entropy = app.add_subcommand("entropy", "Entropies of a distribution or cq ensemble");
    entropy->add_option("FILE", entropy_file)->required();
    add_common(entropy, flags, false);

    std::string pipeline_file;
    auto *pipeline = app.add_subcommand("pipeline", "Trace H_min through a processing pipeline and look for memory");
    pipeline->add_option("FILE", pipeline_file)->required();
    add_common(pipeline, flags, false);

    std::string vertices, point;
    auto *separate = app.add_subcommand("separate", "Separate a point from the convex hull of a point cloud");
    separate->add_option("--vertices", vertices, "Points separated by ';' or spaces, coordinates by commas")->required();
    separate->add_option("--point", point, "Comma-separated coordinates")->required();
    separate->add_option("--format", flags.format)
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::Text}, {"machine", Format::Machine}}));

    RandomSpec spec;
    auto *random = app.add_subcommand("random", "Generate a random document or a demo pipeline");
    random->add_option("KIND", spec.kind,
                       "classical-channel | quantum-channel | distribution | ensemble | markov-classical | "
                       "markov-quantum | memory-classical | memory-quantum")
        ->required();
    random->add_option("--rows", spec.rows, "Output size, signal size, or ensemble dimension")->check(CLI::PositiveNumber);
    random->add_option("--cols", spec.cols, "Input size, message size, or ensemble size")->check(CLI::PositiveNumber);
    random->add_option("--rank", spec.rank, "Kraus rank of a random quantum channel")->check(CLI::PositiveNumber);
    random->add_option("--seed", flags.seed);
    random->add_option("--out", flags.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_code::kUsage;
    }

    try {
        if (*compare) {
            return cmd_compare(file_a, file_b, flags, std::cout);
        }
        if (*entropy) {
            return cmd_entropy(entropy_file, flags, std::cout);
        }
        if (*pipeline) {
            return cmd_pipeline(pipeline_file, flags, std::cout);
        }
        if (*separate) {
            return cmd_separate(vertices, point, std::cout, flags.format);
        }
        return cmd_random(spec, flags, std::cout);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_code::kUsage;
    } catch (const chancmp::DocumentError &e) {
        std::cerr << "document error: " << e.what() << "\n";
        return exit_code::kDocument;
    } catch (const Incompatible &e) {
        std::cerr << "incompatible inputs: " << e.what() << "\n";
        return exit_code::kIncompatible;
    } catch (const chancmp::DimensionMismatch &e) {
        std::cerr << "incompatible inputs: " << e.what() << "\n";
        return exit_code::kIncompatible;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::kInternal;
    }
}
