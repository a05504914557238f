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

#ifndef CHANCMP_TOOLKIT_IO_H
#define CHANCMP_TOOLKIT_IO_H

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <variant>

#include "chancmp/probability.h"
#include "chancmp/quantum_core.h"
#include "chancmp/quantum_minentropy.h"
#include "chancmp/second_law.h"

namespace chancmp {

/// Malformed, unreadable, or semantically invalid document.
class DocumentError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

using DocumentPayload = std::variant<ClassicalChannel, QuantumChannel, Distribution, JointDistribution, CqEnsemble, DemoPipeline>;

/// A self-describing JSON file:
///
///     {"kind": "classical-channel" | "quantum-channel" | "distribution" | "ensemble" | "pipeline",
///      "metadata": {...}, ...payload fields...}
///
/// Complex numbers are [re, im] pairs, matrices are row-major arrays of rows, and every payload
/// carries explicit dimensions. A distribution with a flat "probs" array is a single distribution;
/// a nested one is a joint distribution with the signal on rows.
struct ToolkitDocument {
    DocumentPayload payload;
    nlohmann::json metadata = nlohmann::json::object();

    std::string kind() const;
};

nlohmann::json complex_matrix_to_json(const CMat &m);
CMat complex_matrix_from_json(const nlohmann::json &j, Eigen::Index rows, Eigen::Index cols);
nlohmann::json real_matrix_to_json(const Eigen::MatrixXd &m);
Eigen::MatrixXd real_matrix_from_json(const nlohmann::json &j);

nlohmann::json to_json(const ToolkitDocument &doc);
/// Validates the payload through the type constructors; throws DocumentError.
ToolkitDocument document_from_json(const nlohmann::json &j);

ToolkitDocument parse_document(const std::string &text);
ToolkitDocument load_document(const std::string &path);
void save_document(const std::string &path, const ToolkitDocument &doc);

}  // namespace chancmp

#endif
