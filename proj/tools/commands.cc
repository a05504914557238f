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

#include "commands.h"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "chancmp/classical_comparison.h"
#include "chancmp/convex_hull.h"
#include "chancmp/errors.h"
#include "chancmp/quantum_comparison.h"
#include "chancmp/toolkit_io.h"

using namespace chancmp;
using namespace chancmp_cli;
using nlohmann::json;

namespace {

double tolerance_for(const CommonFlags &flags, const ToolkitDocument &doc, double fallback) {
    if (flags.tol) {
        return *flags.tol;
    }
    if (doc.metadata.contains("tolerance") && doc.metadata["tolerance"].is_number()) {
        return doc.metadata["tolerance"].get<double>();
    }
    return fallback;
}

void maybe_save(const CommonFlags &flags, DocumentPayload payload, json metadata, Report &report) {
    if (flags.out.empty()) {
        return;
    }
    save_document(flags.out, ToolkitDocument{std::move(payload), std::move(metadata)});
    report.field("written", flags.out);
    report.machine()["written"] = flags.out;
}

json vector_json(const Eigen::VectorXd &v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

int compare_classical(const ClassicalChannel &w, const ClassicalChannel &w_prime, double tol, const CommonFlags &flags, Report &report) {
    if (w.num_inputs() != w_prime.num_inputs()) {
        throw Incompatible("channels have different input alphabets");
    }
    report.heading("classical comparison");
    report.field("tolerance", tol);
    report.machine()["tolerance"] = tol;
    ComparisonVerdict v = [&] {
        try {
            return compare_channels(w, w_prime, tol);
        } catch (const AmbiguousVerdict &e) {
            report.field("verdict", "Ambiguous");
            report.field("detail", e.detail);
            report.machine()["verdict"] = "Ambiguous";
            report.machine()["detail"] = e.detail;
            throw;
        }
    }();
    report.field("residual", v.residual);
    report.field("one_sided_residual", v.one_sided_residual);
    report.field("witness_gap", v.gap);
    report.machine()["residual"] = v.residual;
    report.machine()["one_sided_residual"] = v.one_sided_residual;
    report.machine()["gap"] = v.gap;

    if (const auto *cert = std::get_if<DegradingCertificate>(&v.outcome)) {
        report.field("verdict", "Degradable");
        report.machine()["verdict"] = "Degradable";
        report.matrix("phi (rows: output of w', cols: output of w)", cert->phi.matrix());
        report.machine()["phi"] = real_matrix_to_json(cert->phi.matrix());
        int trials = flags.trials.value_or(100);
        DpiReport dpi = verify_dpi_on_samples(w, cert->phi, trials, flags.seed);
        report.heading("data-processing check on sampled ensembles");
        report.field("trials", dpi.trials);
        report.field("seed", std::to_string(flags.seed));
        report.field("min_slack", dpi.min_slack);
        report.field("violations", dpi.violations);
        report.machine()["dpi"] = {{"trials", dpi.trials}, {"seed", flags.seed}, {"min_slack", dpi.min_slack}, {"violations", dpi.violations}};
        maybe_save(flags, cert->phi, {{"role", "degrading-channel"}, {"residual", cert->residual}}, report);
        return exit_code::kDegradable;
    }
    const auto &wit = std::get<ViolationWitness>(v.outcome);
    WitnessEvaluation ev = evaluate_witness(w, w_prime, wit.p_star);
    report.field("verdict", "NotDegradable");
    report.machine()["verdict"] = "NotDegradable";
    report.matrix("witness ensemble p(x, u) (rows: input, cols: message)", wit.p_star.probs());
    report.field("pguess_through_w", ev.optimal_success);
    report.field("pguess_through_w_prime", ev.degraded_side_success);
    report.field("identity_decoder_success", ev.identity_decoder_success);
    report.machine()["witness"] = {
        {"p_star", real_matrix_to_json(wit.p_star.probs())},
        {"gap", wit.gap},
        {"pguess_w", ev.optimal_success},
        {"pguess_w_prime", ev.degraded_side_success},
        {"identity_decoder_success", ev.identity_decoder_success},
    };
    maybe_save(flags, wit.p_star, {{"role", "violation-witness"}, {"gap", wit.gap}}, report);
    return exit_code::kNotDegradable;
}

int compare_quantum(const QuantumChannel &phi, const QuantumChannel &phi_prime, const CommonFlags &flags, Report &report) {
    if (phi.d_in() != phi_prime.d_in()) {
        throw Incompatible("channels have different input dimensions");
    }
    report.heading("quantum comparison");
    QuantumVerdict v = [&] {
        try {
            return find_degrading_quantum(phi, phi_prime);
        } catch (const AmbiguousVerdict &e) {
            report.field("verdict", "Ambiguous");
            report.field("detail", e.detail);
            report.machine()["verdict"] = "Ambiguous";
            report.machine()["detail"] = e.detail;
            throw;
        }
    }();
    int code;
    if (const auto *cert = std::get_if<QuantumDegradingCertificate>(&v)) {
        report.field("verdict", "Degradable");
        report.field("residual", cert->residual);
        report.field("correspondence_residual", cert->correspondence_residual);
        report.machine()["verdict"] = "Degradable";
        report.machine()["residual"] = cert->residual;
        report.machine()["correspondence_residual"] = cert->correspondence_residual;
        if (cert->choi_path_residual) {
            report.field("choi_path_residual", *cert->choi_path_residual);
            report.machine()["choi_path_residual"] = *cert->choi_path_residual;
        }
        report.matrix("Choi(psi)", cert->psi.choi());
        report.machine()["psi_choi"] = complex_matrix_to_json(cert->psi.choi());
        maybe_save(flags, cert->psi, {{"role", "degrading-channel"}, {"residual", cert->residual}}, report);
        code = exit_code::kDegradable;
    } else {
        const auto &wit = std::get<QuantumViolationWitness>(v);
        report.field("verdict", "NotDegradable");
        report.field("gap", wit.gap);
        report.field("pguess_through_phi", wit.phi_side_pguess);
        report.field("pguess_through_phi_prime", wit.phi_prime_side_pguess);
        report.field("aux_dim", static_cast<double>(wit.d_aux));
        report.machine()["verdict"] = "NotDegradable";
        report.machine()["gap"] = wit.gap;
        json states = json::array();
        for (size_t u = 0; u < wit.ensemble.size(); ++u) {
            report.field("weight[" + std::to_string(u) + "]", wit.ensemble.weights()(static_cast<Eigen::Index>(u)));
            report.matrix("state[" + std::to_string(u) + "]", wit.ensemble.states()[u].matrix());
            states.push_back(complex_matrix_to_json(wit.ensemble.states()[u].matrix()));
        }
        report.machine()["witness"] = {
            {"aux_dim", wit.d_aux},
            {"weights", vector_json(wit.ensemble.weights())},
            {"states", states},
            {"pguess_phi", wit.phi_side_pguess},
            {"pguess_phi_prime", wit.phi_prime_side_pguess},
        };
        maybe_save(flags, wit.ensemble, {{"role", "violation-witness"}, {"gap", wit.gap}, {"aux_dim", wit.d_aux}}, report);
        code = exit_code::kNotDegradable;
    }
    if (flags.trials) {
        SufficiencyReport s = test_sufficiency(phi, phi_prime, *flags.trials, flags.seed);
        report.heading("sufficiency probes");
        report.field("probes", s.probes);
        report.field("seed", std::to_string(flags.seed));
        report.field("worst_slack", s.worst_slack);
        report.field("worst_probe", s.worst_probe);
        report.machine()["sufficiency"] = {
            {"probes", s.probes},
            {"seed", flags.seed},
            {"worst_slack", s.worst_slack},
            {"violation_found", s.verdict == SufficiencyVerdict::ViolationFound},
        };
    }
    return code;
}

std::vector<double> parse_numbers(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        double v;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception &) {
            throw UsageError("not a number: '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
            throw UsageError("not a number: '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw UsageError("empty coordinate list");
    }
    return out;
}

Eigen::VectorXd to_vector(const std::vector<double> &v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

int chancmp_cli::cmd_compare(const std::string &file_a, const std::string &file_b, const CommonFlags &flags, std::ostream &out) {
    ToolkitDocument a = load_document(file_a);
    ToolkitDocument b = load_document(file_b);
    if (a.kind() != b.kind()) {
        throw Incompatible("cannot compare a " + a.kind() + " with a " + b.kind());
    }
    Report report("compare");
    report.machine()["seed"] = flags.seed;
    int code;
    try {
        if (a.kind() == "classical-channel") {
            code = compare_classical(std::get<ClassicalChannel>(a.payload), std::get<ClassicalChannel>(b.payload),
                                     tolerance_for(flags, a, kDegradabilityTolerance), flags, report);
        } else if (a.kind() == "quantum-channel") {
            code = compare_quantum(std::get<QuantumChannel>(a.payload), std::get<QuantumChannel>(b.payload), flags, report);
        } else {
            throw Incompatible("compare needs two channel documents, got " + a.kind());
        }
    } catch (const AmbiguousVerdict &) {
        code = exit_code::kAmbiguous;
    }
    report.machine()["exit_code"] = code;
    report.print(out, flags.format);
    return code;
}

int chancmp_cli::cmd_entropy(const std::string &file, const CommonFlags &flags, std::ostream &out) {
    ToolkitDocument doc = load_document(file);
    Report report("entropy");
    json &m = report.machine();
    if (const auto *d = std::get_if<Distribution>(&doc.payload)) {
        report.heading("distribution");
        report.field("H", shannon_entropy(*d));
        m["H"] = shannon_entropy(*d);
    } else if (const auto *j = std::get_if<JointDistribution>(&doc.payload)) {
        double hs = shannon_entropy(j->signal_marginal());
        double hu = shannon_entropy(j->message_marginal());
        report.heading("joint distribution (S = rows, U = columns)");
        report.field("H(S)", hs);
        report.field("H(U)", hu);
        report.field("H(U|S)", conditional_entropy(*j));
        report.field("I(S;U)", mutual_information(*j));
        report.field("P_guess(U|S)", guessing_probability(*j));
        report.field("H_min(U|S)", conditional_min_entropy(*j));
        m["H_S"] = hs;
        m["H_U"] = hu;
        m["H_U_given_S"] = conditional_entropy(*j);
        m["I"] = mutual_information(*j);
        m["pguess"] = guessing_probability(*j);
        m["H_min"] = conditional_min_entropy(*j);
    } else if (const auto *e = std::get_if<CqEnsemble>(&doc.payload)) {
        double tol = tolerance_for(flags, doc, 1e-9);
        PguessBracket b = pguess_bracket(*e, tol);
        MinEntropyBracket h = min_entropy_cq(*e, tol);
        double hu = shannon_entropy(Distribution(e->weights()));
        const char *method = b.method == BracketMethod::Trivial    ? "trivial"
                             : b.method == BracketMethod::Helstrom ? "helstrom"
                             : b.method == BracketMethod::Commuting ? "commuting"
                                                                    : "iterative";
        report.heading("cq ensemble");
        report.field("H(U)", hu);
        report.field("P_guess(U|A)", "[" + format_double(b.lower) + ", " + format_double(b.upper) + "]");
        report.field("H_min(U|A)", "[" + format_double(h.lower) + ", " + format_double(h.upper) + "]");
        report.field("method", method);
        report.field("converged", b.converged ? "yes" : "no");
        m["H_U"] = hu;
        m["pguess"] = {b.lower, b.upper};
        m["H_min"] = {h.lower, h.upper};
        m["method"] = method;
        m["converged"] = b.converged;
    } else {
        throw Incompatible("entropy needs a distribution or ensemble, got " + doc.kind());
    }
    report.print(out, flags.format);
    return 0;
}

int chancmp_cli::cmd_pipeline(const std::string &file, const CommonFlags &flags, std::ostream &out) {
    ToolkitDocument doc = load_document(file);
    const auto *demo = std::get_if<DemoPipeline>(&doc.payload);
    if (!demo) {
        throw Incompatible("pipeline needs a pipeline document, got " + doc.kind());
    }
    std::string probe_id = doc.metadata.value("probe_id", std::string("probe"));
    double tol = tolerance_for(flags, doc, 1e-6);
    ProcessTrace trace = run_pipeline(demo->pipeline, demo->probe, probe_id);
    MemoryVerdict v = detect_memory(trace, tol);

    Report report("pipeline");
    report.heading("trace (boundary 0 is before the first stage)");
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    std::string line;
    std::istringstream lines(csv.str());
    while (std::getline(lines, line)) {
        report.line(line);
    }
    report.machine()["hmin_lower"] = trace.hmin_lower;
    report.machine()["hmin_upper"] = trace.hmin_upper;
    report.machine()["tolerance"] = tol;
    report.heading("verdict");
    int code;
    if (v.kind == MemoryVerdictKind::MemoryWitnessed) {
        report.field("verdict", "MemoryWitnessed");
        report.field("stage", std::to_string(*v.stage));
        report.field("reference_stage", std::to_string(*v.reference_stage));
        report.field("decrease", v.decrease);
        report.machine()["verdict"] = "MemoryWitnessed";
        report.machine()["stage"] = *v.stage;
        report.machine()["reference_stage"] = *v.reference_stage;
        report.machine()["decrease"] = v.decrease;
        code = exit_code::kMemoryWitnessed;
    } else {
        report.field("verdict", "ConsistentWithMemoryless");
        report.machine()["verdict"] = "ConsistentWithMemoryless";
        code = exit_code::kMemoryless;
    }
    if (!flags.out.empty()) {
        std::ofstream f(flags.out);
        if (!f) {
            throw DocumentError("cannot write '" + flags.out + "'");
        }
        write_trace_csv(f, trace);
        report.field("written", flags.out);
    }
    report.machine()["exit_code"] = code;
    report.print(out, flags.format);
    return code;
}

int chancmp_cli::cmd_separate(const std::string &vertices, const std::string &point, std::ostream &out, Format format) {
    // Vertices are separated by ';' or whitespace.
    std::string spaced = vertices;
    std::replace(spaced.begin(), spaced.end(), ';', ' ');
    std::vector<Eigen::VectorXd> verts;
    std::stringstream ss(spaced);
    std::string item;
    while (ss >> item) {
        verts.push_back(to_vector(parse_numbers(item)));
    }
    Eigen::VectorXd y = to_vector(parse_numbers(point));
    if (verts.empty()) {
        throw UsageError("no vertices given");
    }
    for (const auto &v : verts) {
        if (v.size() != y.size()) {
            throw UsageError("all vertices and the point need the same dimension");
        }
    }
    PointCloudHull hull(std::move(verts));
    auto result = separate_point(hull, y);
    Report report("separate");
    report.heading("point versus convex hull");
    if (const auto *s = std::get_if<Separation>(&result)) {
        report.field("verdict", "Separated");
        report.matrix("normal", Eigen::MatrixXd(s->plane.normal.transpose()));
        report.field("offset", s->plane.offset);
        report.field("vertex_margin", s->vertex_margin);
        report.field("point_margin", s->point_margin);
        report.matrix("closest_hull_point", Eigen::MatrixXd(s->closest_point.transpose()));
        report.machine()["verdict"] = "Separated";
        report.machine()["normal"] = vector_json(s->plane.normal);
        report.machine()["offset"] = s->plane.offset;
        report.machine()["vertex_margin"] = s->vertex_margin;
        report.machine()["point_margin"] = s->point_margin;
        report.print(out, format);
        return 0;
    }
    report.field("verdict", "Inside");
    report.field("distance", std::get<Inside>(result).distance);
    report.machine()["verdict"] = "Inside";
    report.machine()["distance"] = std::get<Inside>(result).distance;
    report.print(out, format);
    return 1;
}

int chancmp_cli::cmd_random(const RandomSpec &spec, const CommonFlags &flags, std::ostream &out) {
    json metadata = {{"seed", flags.seed}, {"generator", spec.kind}};
    auto dim = [](size_t n) { return static_cast<Eigen::Index>(n); };
    ToolkitDocument doc{ClassicalChannel::identity(1), metadata};
    if (spec.kind == "classical-channel") {
        doc.payload = random_channel(spec.cols, spec.rows, flags.seed);
    } else if (spec.kind == "quantum-channel") {
        if (spec.rows * spec.rank < spec.cols) {
            throw UsageError("--rank too small: rows * rank must be at least cols");
        }
        doc.payload = QuantumChannel::random(dim(spec.cols), dim(spec.rows), dim(spec.rank), flags.seed);
    } else if (spec.kind == "distribution") {
        doc.payload = random_joint(spec.rows, spec.cols, flags.seed);
    } else if (spec.kind == "ensemble") {
        doc.payload = random_ensemble_maxmixed(dim(spec.rows), spec.cols, flags.seed);
    } else if (spec.kind == "markov-classical" || spec.kind == "markov-quantum" || spec.kind == "memory-classical" ||
               spec.kind == "memory-quantum") {
        doc.payload = make_demo_pipelines(spec.kind, flags.seed);
        doc.metadata["probe_id"] = spec.kind;
    } else {
        throw UsageError("unknown kind '" + spec.kind + "'");
    }
    if (flags.out.empty()) {
        out << to_json(doc).dump(2) << "\n";
    } else {
        save_document(flags.out, doc);
    }
    return 0;
}
