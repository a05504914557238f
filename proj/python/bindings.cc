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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chancmp/classical_comparison.h"
#include "chancmp/convex_hull.h"
#include "chancmp/errors.h"
#include "chancmp/minimax.h"
#include "chancmp/quantum_comparison.h"
#include "chancmp/second_law.h"
#include "chancmp/toolkit_io.h"

namespace py = pybind11;
using namespace chancmp;

namespace {

py::dict classical_compare(const Eigen::MatrixXd &w, const Eigen::MatrixXd &w_prime, double tol) {
    ComparisonVerdict v = compare_channels(ClassicalChannel(w), ClassicalChannel(w_prime), tol);
    py::dict out;
    out["residual"] = v.residual;
    out["one_sided_residual"] = v.one_sided_residual;
    out["gap"] = v.gap;
    if (const auto *c = std::get_if<DegradingCertificate>(&v.outcome)) {
        out["verdict"] = "Degradable";
        out["phi"] = c->phi.matrix();
    } else {
        out["verdict"] = "NotDegradable";
        out["p_star"] = std::get<ViolationWitness>(v.outcome).p_star.probs();
    }
    return out;
}

py::dict quantum_compare(const CMat &choi, Eigen::Index d_in, Eigen::Index d_out, const CMat &choi_prime, Eigen::Index d_out_prime) {
    QuantumVerdict v = find_degrading_quantum(QuantumChannel(choi, d_in, d_out), QuantumChannel(choi_prime, d_in, d_out_prime));
    py::dict out;
    if (const auto *c = std::get_if<QuantumDegradingCertificate>(&v)) {
        out["verdict"] = "Degradable";
        out["residual"] = c->residual;
        out["psi_choi"] = c->psi.choi();
    } else {
        const auto &w = std::get<QuantumViolationWitness>(v);
        out["verdict"] = "NotDegradable";
        out["gap"] = w.gap;
        out["pguess_phi"] = w.phi_side_pguess;
        out["pguess_phi_prime"] = w.phi_prime_side_pguess;
        out["weights"] = w.ensemble.weights();
        std::vector<CMat> states;
        for (const auto &s : w.ensemble.states()) {
            states.push_back(s.matrix());
        }
        out["states"] = states;
    }
    return out;
}

CqEnsemble make_ensemble(const Eigen::VectorXd &weights, const std::vector<CMat> &states) {
    std::vector<DensityOperator> rho;
    for (const auto &s : states) {
        rho.emplace_back(s);
    }
    return CqEnsemble(weights, std::move(rho));
}

py::dict trace_dict(const ProcessTrace &trace, const MemoryVerdict &v) {
    py::dict out;
    out["hmin_lower"] = trace.hmin_lower;
    out["hmin_upper"] = trace.hmin_upper;
    out["verdict"] = v.kind == MemoryVerdictKind::MemoryWitnessed ? "MemoryWitnessed" : "ConsistentWithMemoryless";
    out["stage"] = v.stage;
    out["reference_stage"] = v.reference_stage;
    out["decrease"] = v.decrease;
    return out;
}

}  // namespace

PYBIND11_MODULE(_chancmp, m) {
    m.doc() = "Channel comparison by degradability and conditional min-entropy";

    py::register_exception<AmbiguousVerdict>(m, "AmbiguousVerdict", PyExc_RuntimeError);
    py::register_exception<DocumentError>(m, "DocumentError", PyExc_ValueError);

    m.def(
        "shannon_entropy", [](const Eigen::VectorXd &p) { return shannon_entropy(Distribution(p)); }, py::arg("p"));
    m.def(
        "conditional_entropy", [](const Eigen::MatrixXd &j) { return conditional_entropy(JointDistribution(j)); },
        py::arg("joint"), "H(U|S) with S on rows");
    m.def(
        "mutual_information", [](const Eigen::MatrixXd &j) { return mutual_information(JointDistribution(j)); },
        py::arg("joint"));
    m.def(
        "guessing_probability", [](const Eigen::MatrixXd &j) { return guessing_probability(JointDistribution(j)); },
        py::arg("joint"));
    m.def(
        "conditional_min_entropy", [](const Eigen::MatrixXd &j) { return conditional_min_entropy(JointDistribution(j)); },
        py::arg("joint"));

    m.def(
        "compare_channels", &classical_compare, py::arg("w"), py::arg("w_prime"), py::arg("tol") = kDegradabilityTolerance,
        "Column-stochastic matrices indexed (output, input).");
    m.def(
        "find_degrading_channel",
        [](const Eigen::MatrixXd &w, const Eigen::MatrixXd &w_prime) {
            DegradingCertificate c = find_degrading_channel(ClassicalChannel(w), ClassicalChannel(w_prime));
            return py::make_tuple(Eigen::MatrixXd(c.phi.matrix()), c.residual);
        },
        py::arg("w"), py::arg("w_prime"));
    m.def(
        "extract_violation_witness",
        [](const Eigen::MatrixXd &w, const Eigen::MatrixXd &w_prime) -> py::tuple {
            WitnessResult r = extract_violation_witness(ClassicalChannel(w), ClassicalChannel(w_prime));
            if (!r.witness) {
                return py::make_tuple(r.gap, py::none());
            }
            return py::make_tuple(r.gap, Eigen::MatrixXd(r.witness->p_star.probs()));
        },
        py::arg("w"), py::arg("w_prime"));

    m.def(
        "bilinear_minimax",
        [](const Eigen::MatrixXd &payoff) {
            MinimaxResult r = bilinear_minimax(BilinearGame(payoff));
            py::dict out;
            out["maximin"] = r.maximin;
            out["minimax"] = r.minimax;
            out["row_strategy"] = r.row_strategy;
            out["column_strategy"] = r.column_strategy;
            return out;
        },
        py::arg("payoff"));
    m.def(
        "separate_point",
        [](const Eigen::MatrixXd &vertices, const Eigen::VectorXd &point) {
            std::vector<Eigen::VectorXd> v;
            for (Eigen::Index i = 0; i < vertices.rows(); ++i) {
                v.push_back(vertices.row(i).transpose());
            }
            auto r = separate_point(PointCloudHull(std::move(v)), point);
            py::dict out;
            if (const auto *s = std::get_if<Separation>(&r)) {
                out["verdict"] = "Separated";
                out["normal"] = s->plane.normal;
                out["offset"] = s->plane.offset;
                out["vertex_margin"] = s->vertex_margin;
                out["point_margin"] = s->point_margin;
            } else {
                out["verdict"] = "Inside";
                out["distance"] = std::get<Inside>(r).distance;
            }
            return out;
        },
        py::arg("vertices"), py::arg("point"), "One vertex per row.");

    m.def(
        "depolarizing_choi", [](Eigen::Index d, double t) { return CMat(QuantumChannel::depolarizing(d, t).choi()); },
        py::arg("d"), py::arg("t"));
    m.def(
        "helstrom",
        [](double p0, const CMat &rho0, const CMat &rho1) {
            return helstrom(p0, DensityOperator(rho0), 1 - p0, DensityOperator(rho1)).value;
        },
        py::arg("p0"), py::arg("rho0"), py::arg("rho1"));
    m.def(
        "pguess_bracket",
        [](const Eigen::VectorXd &weights, const std::vector<CMat> &states) {
            PguessBracket b = pguess_bracket(make_ensemble(weights, states));
            return py::make_tuple(b.lower, b.upper);
        },
        py::arg("weights"), py::arg("states"));
    m.def(
        "compare_quantum", &quantum_compare, py::arg("choi"), py::arg("d_in"), py::arg("d_out"), py::arg("choi_prime"),
        py::arg("d_out_prime"), "Trace-one Choi operators with the reference system first.");

    m.def(
        "run_demo",
        [](const std::string &kind, unsigned long long seed, double tol) {
            DemoPipeline d = make_demo_pipelines(kind, seed);
            ProcessTrace t = run_pipeline(d.pipeline, d.probe, kind);
            return trace_dict(t, detect_memory(t, tol));
        },
        py::arg("kind"), py::arg("seed") = 1, py::arg("tol") = 1e-6);

    m.def(
        "load_document_json", [](const std::string &path) { return to_json(load_document(path)).dump(); }, py::arg("path"),
        "Loads and validates a document, returning its canonical JSON text.");
    m.def(
        "parse_document_json", [](const std::string &text) { return to_json(parse_document(text)).dump(); },
        py::arg("text"));
}
