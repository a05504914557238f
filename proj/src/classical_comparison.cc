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

#include "chancmp/classical_comparison.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "chancmp/errors.h"
#include "chancmp/lp.h"

using namespace chancmp;

namespace {

void require_same_input(const ClassicalChannel &w, const ClassicalChannel &w_prime, const char *where) {
    if (w.num_inputs() != w_prime.num_inputs()) {
        throw DimensionMismatch(std::string(where) + ": channels have different input alphabets");
    }
}

double max_abs_residual(const ClassicalChannel &w, const ClassicalChannel &w_prime, const Eigen::MatrixXd &phi) {
    return (w_prime.matrix() - phi * w.matrix()).cwiseAbs().maxCoeff();
}

// Builds min t over (phi, t) subject to phi column-stochastic and w' - phi w <= t, plus
// phi w - w' <= t when two-sided. phi(z|y) is variable z * |Y| + y.
LinearProgram degrading_lp(const ClassicalChannel &w, const ClassicalChannel &w_prime, bool two_sided) {
    auto ny = static_cast<Eigen::Index>(w.num_outputs());
    auto nz = static_cast<Eigen::Index>(w_prime.num_outputs());
    auto nx = static_cast<Eigen::Index>(w.num_inputs());
    Eigen::Index t = nz * ny;
    LinearProgram lp(t + 1, Sense::Minimize);
    lp.objective(t) = 1;
    lp.set_free(t);

    for (Eigen::Index y = 0; y < ny; ++y) {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(t + 1);
        for (Eigen::Index z = 0; z < nz; ++z) {
            a(z * ny + y) = 1;
        }
        lp.add_constraint(a, Relation::Equal, 1);
    }
    for (Eigen::Index z = 0; z < nz; ++z) {
        for (Eigen::Index x = 0; x < nx; ++x) {
            Eigen::VectorXd a = Eigen::VectorXd::Zero(t + 1);
            for (Eigen::Index y = 0; y < ny; ++y) {
                a(z * ny + y) = w.matrix()(y, x);
            }
            a(t) = 1;
            // (phi w)(z|x) + t >= w'(z|x)
            lp.add_constraint(a, Relation::GreaterEqual, w_prime.matrix()(z, x));
            if (two_sided) {
                a(t) = -1;
                lp.add_constraint(a, Relation::LessEqual, w_prime.matrix()(z, x));
            }
        }
    }
    return lp;
}

LpSolution solve_or_throw(const LinearProgram &lp, const char *where) {
    LpSolution s = solve_lp(lp);
    if (!s.optimal()) {
        throw IterationLimit(std::string(where) + ": linear program ended with status " + to_string(s.status));
    }
    return s;
}

Eigen::VectorXd dirichlet(std::mt19937_64 &rng, Eigen::Index n, double concentration) {
    std::gamma_distribution<double> gamma(concentration, 1.0);
    Eigen::VectorXd v(n);
    double total = 0;
    do {
        for (Eigen::Index i = 0; i < n; ++i) {
            v(i) = gamma(rng);
        }
        total = v.sum();
    } while (!(total > 0));
    return v / total;
}

}  // namespace

DegradingCertificate chancmp::find_degrading_channel(const ClassicalChannel &w, const ClassicalChannel &w_prime) {
    require_same_input(w, w_prime, "find_degrading_channel");
    auto ny = static_cast<Eigen::Index>(w.num_outputs());
    auto nz = static_cast<Eigen::Index>(w_prime.num_outputs());
    LpSolution s = solve_or_throw(degrading_lp(w, w_prime, true), "find_degrading_channel");

    Eigen::MatrixXd phi(nz, ny);
    for (Eigen::Index z = 0; z < nz; ++z) {
        for (Eigen::Index y = 0; y < ny; ++y) {
            phi(z, y) = s.x(z * ny + y);
        }
    }
    DegradingCertificate cert{ClassicalChannel::from_approximate(phi, w.outputs(), w_prime.outputs()), 0};
    cert.residual = max_abs_residual(w, w_prime, cert.phi.matrix());
    return cert;
}

double chancmp::one_sided_residual(const ClassicalChannel &w, const ClassicalChannel &w_prime) {
    require_same_input(w, w_prime, "one_sided_residual");
    return solve_or_throw(degrading_lp(w, w_prime, false), "one_sided_residual").value;
}

WitnessResult chancmp::extract_violation_witness(const ClassicalChannel &w, const ClassicalChannel &w_prime) {
    require_same_input(w, w_prime, "extract_violation_witness");
    auto nx = static_cast<Eigen::Index>(w.num_inputs());
    auto ny = static_cast<Eigen::Index>(w.num_outputs());
    auto nz = static_cast<Eigen::Index>(w_prime.num_outputs());

    // Variables p(x, z') at x * |Z| + z', then the epigraph variables s_y >= max_z' (w p)(y, z').
    Eigen::Index np = nx * nz;
    LinearProgram lp(np + ny, Sense::Maximize);
    for (Eigen::Index x = 0; x < nx; ++x) {
        for (Eigen::Index z = 0; z < nz; ++z) {
            lp.objective(x * nz + z) = w_prime.matrix()(z, x);
        }
    }
    for (Eigen::Index y = 0; y < ny; ++y) {
        lp.objective(np + y) = -1;
        lp.set_free(np + y);
    }
    for (Eigen::Index y = 0; y < ny; ++y) {
        for (Eigen::Index z = 0; z < nz; ++z) {
            Eigen::VectorXd a = Eigen::VectorXd::Zero(np + ny);
            for (Eigen::Index x = 0; x < nx; ++x) {
                a(x * nz + z) = w.matrix()(y, x);
            }
            a(np + y) = -1;
            lp.add_constraint(a, Relation::LessEqual, 0);
        }
    }
    Eigen::VectorXd simplex = Eigen::VectorXd::Zero(np + ny);
    simplex.head(np).setOnes();
    lp.add_constraint(simplex, Relation::Equal, 1);

    LpSolution s = solve_or_throw(lp, "extract_violation_witness");
    WitnessResult result;
    result.gap = s.value;
    if (result.gap > kDegradabilityTolerance) {
        Eigen::MatrixXd p(nx, nz);
        for (Eigen::Index x = 0; x < nx; ++x) {
            for (Eigen::Index z = 0; z < nz; ++z) {
                p(x, z) = std::max(0.0, s.x(x * nz + z));
            }
        }
        p /= p.sum();
        result.witness = ViolationWitness{JointDistribution(p, w.inputs(), w_prime.outputs()), result.gap};
    }
    return result;
}

WitnessEvaluation chancmp::evaluate_witness(
    const ClassicalChannel &w, const ClassicalChannel &w_prime, const JointDistribution &p_star) {
    require_same_input(w, w_prime, "evaluate_witness");
    if (p_star.num_signals() != w.num_inputs() || p_star.num_messages() != w_prime.num_outputs()) {
        throw DimensionMismatch("evaluate_witness: witness must be a distribution over (X, Z)");
    }
    JointDistribution via_w_prime = push_through_channel(p_star, w_prime);
    JointDistribution via_w = push_through_channel(p_star, w);
    WitnessEvaluation e;
    e.identity_decoder_success = via_w_prime.probs().trace();
    e.optimal_success = guessing_probability(via_w);
    e.degraded_side_success = guessing_probability(via_w_prime);
    return e;
}

ComparisonVerdict chancmp::compare_channels(const ClassicalChannel &w, const ClassicalChannel &w_prime, double tol) {
    require_same_input(w, w_prime, "compare_channels");
    DegradingCertificate cert = find_degrading_channel(w, w_prime);
    WitnessResult wit = extract_violation_witness(w, w_prime);
    double one_sided = one_sided_residual(w, w_prime);

    auto dump = [&]() {
        std::stringstream ss;
        ss.precision(17);
        ss << "residual=" << cert.residual << " one_sided=" << one_sided << " gap=" << wit.gap << " tol=" << tol;
        return ss.str();
    };

    // 0 <= gap = one_sided <= residual, up to solver precision.
    constexpr double slack = 1e-9;
    if (wit.gap < -slack || std::abs(wit.gap - one_sided) > slack || one_sided > cert.residual + slack) {
        throw std::logic_error("compare_channels: complementarity between the two programs failed: " + dump());
    }

    ComparisonVerdict v{cert, cert.residual, one_sided, wit.gap};
    bool certified = cert.residual <= tol;
    bool witnessed = wit.gap > tol && wit.witness.has_value();
    if (certified && !witnessed) {
        return v;
    }
    bool in_band = cert.residual < 10 * tol && wit.gap < 10 * tol;
    if (witnessed && !certified && !in_band) {
        v.outcome = *wit.witness;
        return v;
    }
    throw AmbiguousVerdict("compare_channels: certificate and witness programs are inconclusive at this tolerance", dump());
}

DpiReport chancmp::verify_dpi_on_samples(const ClassicalChannel &w, const ClassicalChannel &phi, int n_trials, unsigned long long seed) {
    if (phi.num_inputs() != w.num_outputs()) {
        throw DimensionMismatch("verify_dpi_on_samples: phi does not accept the output of w");
    }
    DpiReport report;
    report.min_slack = std::numeric_limits<double>::infinity();
    for (int t = 0; t < n_trials; ++t) {
        unsigned long long trial_seed = seed + static_cast<unsigned long long>(t);
        size_t messages = 2 + static_cast<size_t>(trial_seed % 3);
        double concentration = (t % 2 == 0) ? 1.0 : 0.2;
        JointDistribution p = random_joint(w.num_inputs(), messages, trial_seed, concentration);
        JointDistribution py = push_through_channel(p, w);
        JointDistribution pz = push_through_channel(py, phi);
        double slack = conditional_min_entropy(pz) - conditional_min_entropy(py);
        report.min_slack = std::min(report.min_slack, slack);
        if (slack < -1e-10) {
            ++report.violations;
        }
        ++report.trials;
    }
    if (report.trials == 0) {
        report.min_slack = 0;
    }
    return report;
}

ClassicalChannel chancmp::random_channel(size_t n_in, size_t n_out, unsigned long long seed) {
    if (n_in == 0 || n_out == 0) {
        throw InvariantViolation("random_channel: alphabets must be nonempty");
    }
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd m(n_out, n_in);
    for (Eigen::Index x = 0; x < m.cols(); ++x) {
        m.col(x) = dirichlet(rng, m.rows(), 1.0);
    }
    return ClassicalChannel(m);
}

JointDistribution chancmp::random_joint(size_t n_signal, size_t n_message, unsigned long long seed, double concentration) {
    if (n_signal == 0 || n_message == 0) {
        throw InvariantViolation("random_joint: alphabets must be nonempty");
    }
    std::mt19937_64 rng(seed);
    Eigen::VectorXd flat = dirichlet(rng, static_cast<Eigen::Index>(n_signal * n_message), concentration);
    Eigen::MatrixXd p = Eigen::Map<Eigen::MatrixXd>(flat.data(), n_signal, n_message);
    return JointDistribution(p);
}

LessNoisySearch chancmp::search_less_noisy_violation(
    const ClassicalChannel &w, const ClassicalChannel &w_prime, int restarts, int steps, unsigned long long seed) {
    require_same_input(w, w_prime, "search_less_noisy_violation");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    auto score = [&](const Eigen::MatrixXd &p) {
        JointDistribution j(p);
        return conditional_entropy(push_through_channel(j, w)) - conditional_entropy(push_through_channel(j, w_prime));
    };

    LessNoisySearch best;
    best.best_violation = -std::numeric_limits<double>::infinity();
    auto nx = static_cast<Eigen::Index>(w.num_inputs());
    for (int r = 0; r < restarts; ++r) {
        Eigen::Index nu = (r % 2 == 0) ? 2 : std::max<Eigen::Index>(2, nx);
        Eigen::VectorXd flat = dirichlet(rng, nx * nu, 0.5);
        Eigen::MatrixXd p = Eigen::Map<Eigen::MatrixXd>(flat.data(), nx, nu);
        double current = score(p);
        double step = 0.2;
        for (int s = 0; s < steps; ++s) {
            Eigen::MatrixXd q = p;
            for (Eigen::Index i = 0; i < q.size(); ++i) {
                q(i) = std::max(0.0, q(i) * std::exp(step * normal(rng)));
            }
            if (!(q.sum() > 0)) {
                continue;
            }
            q /= q.sum();
            double candidate = score(q);
            if (candidate > current) {
                p = q;
                current = candidate;
            } else {
                step = std::max(1e-3, step * 0.995);
            }
        }
        if (current > best.best_violation) {
            best.best_violation = current;
            best.best_probe = JointDistribution(p);
        }
    }
    if (restarts <= 0) {
        best.best_violation = 0;
    }
    return best;
}
