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

#include "chancmp/toolkit_io.h"

#include <fstream>
#include <sstream>

using namespace chancmp;
using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json &field(const json &j, const char *name) {
    if (!j.is_object() || !j.contains(name)) {
        throw DocumentError(std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

Eigen::Index dim_field(const json &j, const char *name) {
    const json &v = field(j, name);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw DocumentError(std::string("field '") + name + "' must be a positive integer");
    }
    return static_cast<Eigen::Index>(v.get<long long>());
}

Alphabet labels_or_default(const json &j, const char *name, size_t n) {
    if (!j.contains(name)) {
        return default_alphabet(n);
    }
    auto labels = j.at(name).get<Alphabet>();
    if (labels.size() != n) {
        throw DocumentError(std::string("field '") + name + "' has the wrong length");
    }
    return labels;
}

json channel_payload(const AnyChannel &c);
AnyChannel channel_from_payload(const json &j);

json classical_json(const ClassicalChannel &w) {
    return json{
        {"kind", "classical-channel"},
        {"inputs", w.inputs()},
        {"outputs", w.outputs()},
        {"matrix", real_matrix_to_json(w.matrix())},
    };
}

ClassicalChannel classical_from(const json &j) {
    Eigen::MatrixXd m = real_matrix_from_json(field(j, "matrix"));
    return ClassicalChannel(m, labels_or_default(j, "inputs", static_cast<size_t>(m.cols())),
                            labels_or_default(j, "outputs", static_cast<size_t>(m.rows())));
}

json quantum_json(const QuantumChannel &c) {
    return json{
        {"kind", "quantum-channel"},
        {"d_in", c.d_in()},
        {"d_out", c.d_out()},
        {"choi", complex_matrix_to_json(c.choi())},
    };
}

QuantumChannel quantum_from(const json &j) {
    Eigen::Index d_in = dim_field(j, "d_in");
    Eigen::Index d_out = dim_field(j, "d_out");
    return QuantumChannel(complex_matrix_from_json(field(j, "choi"), d_in * d_out, d_in * d_out), d_in, d_out);
}

json ensemble_json(const CqEnsemble &e) {
    json states = json::array();
    for (const auto &s : e.states()) {
        states.push_back(complex_matrix_to_json(s.matrix()));
    }
    std::vector<double> w(e.weights().data(), e.weights().data() + e.weights().size());
    return json{{"kind", "ensemble"}, {"dim", e.dim()}, {"weights", w}, {"states", states}};
}

CqEnsemble ensemble_from(const json &j) {
    Eigen::Index d = dim_field(j, "dim");
    auto w = field(j, "weights").get<std::vector<double>>();
    const json &states = field(j, "states");
    if (!states.is_array() || states.size() != w.size()) {
        throw DocumentError("ensemble: one state per weight is required");
    }
    std::vector<DensityOperator> rho;
    for (const auto &s : states) {
        rho.emplace_back(complex_matrix_from_json(s, d, d));
    }
    return CqEnsemble(Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size())), std::move(rho));
}

json distribution_json(const Distribution &d) {
    std::vector<double> p(d.probs().data(), d.probs().data() + d.probs().size());
    return json{{"kind", "distribution"}, {"size", d.size()}, {"labels", d.labels()}, {"probs", p}};
}

json joint_json(const JointDistribution &d) {
    return json{
        {"kind", "distribution"},
        {"rows", d.num_signals()},
        {"cols", d.num_messages()},
        {"signal_labels", d.signal_labels()},
        {"message_labels", d.message_labels()},
        {"probs", real_matrix_to_json(d.probs())},
    };
}

std::variant<Distribution, JointDistribution> distribution_from(const json &j) {
    const json &p = field(j, "probs");
    if (!p.is_array() || p.empty()) {
        throw DocumentError("distribution: 'probs' must be a nonempty array");
    }
    if (p.front().is_array()) {
        Eigen::MatrixXd m = real_matrix_from_json(p);
        return JointDistribution(m, labels_or_default(j, "signal_labels", static_cast<size_t>(m.rows())),
                                 labels_or_default(j, "message_labels", static_cast<size_t>(m.cols())));
    }
    auto v = p.get<std::vector<double>>();
    Eigen::VectorXd probs = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    return Distribution(probs, labels_or_default(j, "labels", v.size()));
}

json channel_payload(const AnyChannel &c) {
    return std::visit(overloaded{[](const ClassicalChannel &w) { return classical_json(w); },
                                 [](const QuantumChannel &q) { return quantum_json(q); }},
                      c);
}

AnyChannel channel_from_payload(const json &j) {
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "classical-channel") {
        return classical_from(j);
    }
    if (kind == "quantum-channel") {
        return quantum_from(j);
    }
    throw DocumentError("pipeline stage: unknown channel kind '" + kind + "'");
}

json pipeline_json(const DemoPipeline &d) {
    json stages = json::array();
    for (const auto &s : d.pipeline.stages) {
        if (auto *m = std::get_if<MemorylessStage>(&s)) {
            stages.push_back(json{{"type", "memoryless"}, {"channel", channel_payload(m->channel)}});
        } else {
            const auto &ms = std::get<MemoryStage>(s);
            stages.push_back(json{{"type", "memory"},
                                  {"signal_in", ms.signal_in},
                                  {"signal_out", ms.signal_out},
                                  {"channel", channel_payload(ms.joint)}});
        }
    }
    json probe = std::visit(overloaded{[](const JointDistribution &p) { return joint_json(p); },
                                       [](const CqEnsemble &e) { return ensemble_json(e); }},
                            d.probe);
    return json{{"kind", "pipeline"}, {"memory_dim", d.pipeline.memory_dim}, {"stages", stages}, {"probe", probe}};
}

DemoPipeline pipeline_from(const json &j) {
    Pipeline p;
    p.memory_dim = static_cast<size_t>(dim_field(j, "memory_dim"));
    const json &stages = field(j, "stages");
    if (!stages.is_array() || stages.empty()) {
        throw DocumentError("pipeline: 'stages' must be a nonempty array");
    }
    for (const auto &s : stages) {
        std::string type = field(s, "type").get<std::string>();
        AnyChannel c = channel_from_payload(field(s, "channel"));
        if (type == "memoryless") {
            p.stages.push_back(MemorylessStage{std::move(c)});
        } else if (type == "memory") {
            p.stages.push_back(MemoryStage{std::move(c), static_cast<size_t>(dim_field(s, "signal_in")),
                                           static_cast<size_t>(dim_field(s, "signal_out"))});
        } else {
            throw DocumentError("pipeline: unknown stage type '" + type + "'");
        }
    }
    const json &probe_json = field(j, "probe");
    std::string probe_kind = field(probe_json, "kind").get<std::string>();
    Probe probe = probe_kind == "ensemble" ? Probe(ensemble_from(probe_json)) : Probe(JointDistribution(Eigen::MatrixXd::Ones(1, 1)));
    if (probe_kind == "distribution") {
        auto d = distribution_from(probe_json);
        if (!std::holds_alternative<JointDistribution>(d)) {
            throw DocumentError("pipeline: a classical probe must be a joint distribution");
        }
        probe = std::get<JointDistribution>(d);
    } else if (probe_kind != "ensemble") {
        throw DocumentError("pipeline: probe must be a distribution or an ensemble");
    }
    DemoPipeline out{std::move(p), std::move(probe)};
    size_t signal = std::visit(overloaded{[](const JointDistribution &d) { return d.num_signals(); },
                                          [](const CqEnsemble &e) { return static_cast<size_t>(e.dim()); }},
                               out.probe);
    out.pipeline.validate(signal);
    if (out.pipeline.quantum() != std::holds_alternative<CqEnsemble>(out.probe)) {
        throw DocumentError("pipeline: probe flavor does not match the stages");
    }
    return out;
}

}  // namespace

std::string ToolkitDocument::kind() const {
    return std::visit(overloaded{
                          [](const ClassicalChannel &) { return std::string("classical-channel"); },
                          [](const QuantumChannel &) { return std::string("quantum-channel"); },
                          [](const Distribution &) { return std::string("distribution"); },
                          [](const JointDistribution &) { return std::string("distribution"); },
                          [](const CqEnsemble &) { return std::string("ensemble"); },
                          [](const DemoPipeline &) { return std::string("pipeline"); },
                      },
                      payload);
}

json chancmp::complex_matrix_to_json(const CMat &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(row);
    }
    return rows;
}

CMat chancmp::complex_matrix_from_json(const json &j, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
        throw DocumentError("complex matrix: expected " + std::to_string(rows) + " rows");
    }
    CMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json &row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw DocumentError("complex matrix: expected " + std::to_string(cols) + " columns");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            const json &z = row[static_cast<size_t>(k)];
            if (z.is_number()) {
                m(i, k) = z.get<double>();
            } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
                m(i, k) = cdouble(z[0].get<double>(), z[1].get<double>());
            } else {
                throw DocumentError("complex matrix: entries must be [re, im] pairs");
            }
        }
    }
    return m;
}

json chancmp::real_matrix_to_json(const Eigen::MatrixXd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<double> row(static_cast<size_t>(m.cols()));
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row[static_cast<size_t>(j)] = m(i, j);
        }
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXd chancmp::real_matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty()) {
        throw DocumentError("matrix: expected a nonempty array of rows");
    }
    auto rows = static_cast<Eigen::Index>(j.size());
    auto cols = static_cast<Eigen::Index>(j.front().size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json &row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw DocumentError("matrix: ragged rows");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            if (!row[static_cast<size_t>(k)].is_number()) {
                throw DocumentError("matrix: non-numeric entry");
            }
            m(i, k) = row[static_cast<size_t>(k)].get<double>();
        }
    }
    return m;
}

json chancmp::to_json(const ToolkitDocument &doc) {
    json j = std::visit(overloaded{
                            [](const ClassicalChannel &w) { return classical_json(w); },
                            [](const QuantumChannel &q) { return quantum_json(q); },
                            [](const Distribution &d) { return distribution_json(d); },
                            [](const JointDistribution &d) { return joint_json(d); },
                            [](const CqEnsemble &e) { return ensemble_json(e); },
                            [](const DemoPipeline &p) { return pipeline_json(p); },
                        },
                        doc.payload);
    j["metadata"] = doc.metadata;
    return j;
}

ToolkitDocument chancmp::document_from_json(const json &j) {
    try {
        std::string kind = field(j, "kind").get<std::string>();
        json metadata = j.contains("metadata") ? j.at("metadata") : json::object();
        auto make = [&](DocumentPayload p) { return ToolkitDocument{std::move(p), metadata}; };
        if (kind == "classical-channel") {
            return make(classical_from(j));
        }
        if (kind == "quantum-channel") {
            return make(quantum_from(j));
        }
        if (kind == "distribution") {
            return std::visit([&](auto &&d) { return make(std::move(d)); }, distribution_from(j));
        }
        if (kind == "ensemble") {
            return make(ensemble_from(j));
        }
        if (kind == "pipeline") {
            return make(pipeline_from(j));
        }
        throw DocumentError("unknown document kind '" + kind + "'");
    } catch (const DocumentError &) {
        throw;
    } catch (const json::exception &e) {
        throw DocumentError(std::string("malformed document: ") + e.what());
    } catch (const std::invalid_argument &e) {
        throw DocumentError(std::string("invalid payload: ") + e.what());
    }
}

ToolkitDocument chancmp::parse_document(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw DocumentError(std::string("not valid JSON: ") + e.what());
    }
    return document_from_json(j);
}

ToolkitDocument chancmp::load_document(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DocumentError("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

void chancmp::save_document(const std::string &path, const ToolkitDocument &doc) {
    std::ofstream out(path);
    if (!out) {
        throw DocumentError("cannot write '" + path + "'");
    }
    out << to_json(doc).dump(2) << "\n";
}
