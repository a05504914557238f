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

#ifndef CHANCMP_TOOLS_REPORT_H
#define CHANCMP_TOOLS_REPORT_H

#include <Eigen/Dense>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "chancmp/linalg.h"

namespace chancmp_cli {

enum class Format { Text, Machine };

/// Collects a human-readable report and a machine section side by side. In text mode both are
/// printed, the machine section last; in machine mode only the JSON is printed.
class Report {
   public:
    explicit Report(std::string command) {
        machine_["command"] = std::move(command);
    }

    void heading(const std::string &text);
    void field(const std::string &key, const std::string &value);
    void field(const std::string &key, double value);
    void matrix(const std::string &title, const Eigen::MatrixXd &m);
    void matrix(const std::string &title, const chancmp::CMat &m);
    void line(const std::string &text);

    nlohmann::json &machine() {
        return machine_;
    }

    void print(std::ostream &out, Format format) const;

   private:
    std::vector<std::string> lines_;
    nlohmann::json machine_;
};

std::string format_double(double v);

}  // namespace chancmp_cli

#endif
