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

#ifndef CHANCMP_TOOLS_COMMANDS_H
#define CHANCMP_TOOLS_COMMANDS_H

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "report.h"

namespace chancmp_cli {

namespace exit_code {
inline constexpr int kDegradable = 0;
inline constexpr int kNotDegradable = 1;
inline constexpr int kAmbiguous = 2;
inline constexpr int kMemoryless = 0;
inline constexpr int kMemoryWitnessed = 1;
inline constexpr int kUsage = 10;
inline constexpr int kDocument = 11;
inline constexpr int kIncompatible = 12;
inline constexpr int kInternal = 13;
}  // namespace exit_code

/// Raised for inputs that parse but cannot be combined (kind mismatch, different input spaces).
class Incompatible : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised for malformed command arguments that CLI11 cannot catch on its own.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    unsigned long long seed = 1;
    std::optional<double> tol;
    std::optional<int> trials;
    std::string out;
    Format format = Format::Text;
};

int cmd_compare(const std::string &file_a, const std::string &file_b, const CommonFlags &flags, std::ostream &out);
int cmd_entropy(const std::string &file, const CommonFlags &flags, std::ostream &out);
int cmd_pipeline(const std::string &file, const CommonFlags &flags, std::ostream &out);
/// vertices "x1,y1,...;x2,y2,...", point "x,y,...". Exit 0 when separated, 1 when inside.
int cmd_separate(const std::string &vertices, const std::string &point, std::ostream &out, Format format);

struct RandomSpec {
    std::string kind;
    size_t rows = 2;
    size_t cols = 2;
    size_t rank = 2;
};
/// Writes a random document of the requested kind (or a demo pipeline) to flags.out or `out`.
int cmd_random(const RandomSpec &spec, const CommonFlags &flags, std::ostream &out);

}  // namespace chancmp_cli

#endif
