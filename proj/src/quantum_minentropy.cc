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

#include "chancmp/quantum_minentropy.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "chancmp/errors.h"
#include "chancmp/probability.h"

using namespace chancmp;

CqEnsemble::CqEnsemble(Eigen::VectorXd weights, std::vector<DensityOperator> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
    if (states_.empty() || static_cast<size_t>(weights_.size()) != states_.size()) {
        throw DimensionMismatch("CqEnsemble: one weight per state is required");
    }
    // Reuses the classical validation of the weights.
    Distribution check(weights_);
    weights_ = check.probs();
    for (const auto &s : states_) {
        if (s.dim() != states_.front().dim()) {
            throw DimensionMismatch("CqEnsemble: states of different dimension");
        }
    }
}

CqEnsemble CqEnsemble::from_weighted(const std::vector<CMat> &weighted) {
    if (weighted.empty()) {
        throw InvariantViolation("CqEnsemble::from_weighted: no operators");
    }
    Eigen::Index d = weighted.front().rows();
    Eigen::VectorXd p(static_cast<Eigen::Index>(weighted.size()));
    std::vector<DensityOperator> states;
    for (size_t u = 0; u < weighted.size(); ++u) {
        double w = weighted[u].trace().real();
        p(static_cast<Eigen::Index>(u)) = std::max(w, 0.0);
        if (w > 1e-15) {
            states.emplace_back(hermitian_part(weighted[u]) / w);
        } else {
            states.push_back(DensityOperator::maximally_mixed(d));
        }
    }
    double total = p.sum();
    if (std::abs(total - 1) > 1e-9) {
        throw InvariantViolation("CqEnsemble::from_weighted: operators do not have unit total trace");
    }
    return CqEnsemble(p / total, std::move(states));
}

CMat CqEnsemble::weighted(size_t u) const {
    return weights_(static_cast<Eigen::Index>(u)) * states_[u].matrix();
}

std::vector<CMat> CqEnsemble::weighted() const {
    std::vector<CMat> out;
    for (size_t u = 0; u < size(); ++u) {
        out.push_back(weighted(u));
    }
    return out;
}

CMat CqEnsemble::average() const {
    CMat out = CMat::Zero(dim(), dim());
    for (size_t u = 0; u < size(); ++u) {
        out += weighted(u);
    }
    return out;
}

CqEnsemble chancmp::push_ensemble(const CqEnsemble &e, const QuantumChannel &phi) {
    std::vector<DensityOperator> out;
    for (const auto &s : e.states()) {
        out.push_back(apply_channel(phi, s));
    }
    return CqEnsemble(e.weights(), std::move(out));
}

double chancmp::success_probability(const CqEnsemble &e, const Povm &povm) {
    if (povm.size() != e.size() || povm.dim() != e.dim()) {
        throw DimensionMismatch("success_probability: POVM does not match the ensemble");
    }
    double total = 0;
    for (size_t u = 0; u < e.size(); ++u) {
        total += (povm[u] * e.weighted(u)).trace().real();
    }
    return total;
}

namespace {

double success_weighted(const std::vector<CMat> &a, const std::vector<CMat> &povm) {
    double total = 0;
    for (size_t u = 0; u < a.size(); ++u) {
        total += (povm[u] * a[u]).trace().real();
    }
    return total;
}

// Adds (I - support projector)/n to every element so the operators sum to I exactly.
std::vector<CMat> complete_povm(std::vector<CMat> elements) {
    Eigen::Index d = elements.front().rows();
    CMat total = CMat::Zero(d, d);
    for (const auto &e : elements) {
        total += e;
    }
    // Fix both the kernel and any drift on the support.
    CMat shape = psd_inv_sqrt(total, 1e-12);
    CMat support = positive_projector(total, 1e-12);
    CMat rest = (CMat::Identity(d, d) - support) / static_cast<double>(elements.size());
    for (auto &e : elements) {
        e = hermitian_part(shape * e * shape) + rest;
    }
    return elements;
}

std::vector<CMat> pgm_elements(const std::vector<CMat> &a) {
    Eigen::Index d = a.front().rows();
    CMat s = CMat::Zero(d, d);
    for (const auto &x : a) {
        s += x;
    }
    CMat shape = psd_inv_sqrt(s, 1e-14);
    std::vector<CMat> out;
    for (const auto &x : a) {
        out.push_back(hermitian_part(shape * x * shape));
    }
    return complete_povm(std::move(out));
}

// One fixed-point step Pi_j <- R^{-1} A_j Pi_j A_j R^{-1}, R = (sum_j A_j Pi_j A_j)^{1/2}.
std::vector<CMat> refine_step(const std::vector<CMat> &a, const std::vector<CMat> &pi) {
    Eigen::Index d = a.front().rows();
    CMat r2 = CMat::Zero(d, d);
    std::vector<CMat> terms;
    for (size_t j = 0; j < a.size(); ++j) {
        terms.push_back(hermitian_part(a[j] * pi[j] * a[j]));
        r2 += terms.back();
    }
    CMat r_inv = psd_inv_sqrt(r2, 1e-28);
    for (auto &t : terms) {
        t = hermitian_part(r_inv * t * r_inv);
    }
    return complete_povm(std::move(terms));
}

// Tr Y for the feasible certificate Y = Herm(sum A_u P^u) + eps I.
double dual_upper(const std::vector<CMat> &a, const std::vector<CMat> &povm) {
    Eigen::Index d = a.front().rows();
    CMat y = CMat::Zero(d, d);
    for (size_t u = 0; u < a.size(); ++u) {
        y += a[u] * povm[u];
    }
    y = hermitian_part(y);
    double eps = 0;
    for (const auto &x : a) {
        eps = std::max(eps, max_eigenvalue(x - y));
    }
    return y.trace().real() + eps * static_cast<double>(d);
}

}  // namespace

GuessResult chancmp::helstrom_weighted(const CMat &a0, const CMat &a1) {
    CMat diff = hermitian_part(a0 - a1);
    CMat p0 = positive_projector(diff, 0);
    Eigen::Index d = a0.rows();
    double total = (a0 + a1).trace().real();
    double value = 0.5 * (total + trace_norm(diff));
    return GuessResult{value, Povm({p0, CMat::Identity(d, d) - p0})};
}

GuessResult chancmp::helstrom(double p0, const DensityOperator &rho0, double p1, const DensityOperator &rho1) {
    if (rho0.dim() != rho1.dim()) {
        throw DimensionMismatch("helstrom: states of different dimension");
    }
    Distribution check(Eigen::Vector2d(p0, p1));
    return helstrom_weighted(p0 * rho0.matrix(), p1 * rho1.matrix());
}

GuessResult chancmp::pgm_lower_bound(const CqEnsemble &e) {
    Povm povm(pgm_elements(e.weighted()));
    return GuessResult{success_probability(e, povm), povm};
}

bool chancmp::operators_commute(const std::vector<CMat> &ops, double tol) {
    for (size_t i = 0; i < ops.size(); ++i) {
        for (size_t j = i + 1; j < ops.size(); ++j) {
            if ((ops[i] * ops[j] - ops[j] * ops[i]).cwiseAbs().maxCoeff() > tol) {
                return false;
            }
        }
    }
    return true;
}

namespace {

// Classical reduction for commuting operators: a common eigenbasis from a generic combination.
std::optional<GuessResult> commuting_guess(const std::vector<CMat> &a) {
    Eigen::Index d = a.front().rows();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.5, 1.5);
    for (int attempt = 0; attempt < 3; ++attempt) {
        CMat combo = CMat::Zero(d, d);
        for (const auto &x : a) {
            combo += unif(rng) * x;
        }
        CMat v = eigh(combo).vectors;
        bool diagonal = true;
        Eigen::MatrixXd table(d, static_cast<Eigen::Index>(a.size()));
        for (size_t u = 0; u < a.size() && diagonal; ++u) {
            CMat t = v.adjoint() * a[u] * v;
            CMat off = t;
            off.diagonal().setZero();
            if (off.size() > 0 && off.cwiseAbs().maxCoeff() > 1e-10) {
                diagonal = false;
            }
            table.col(static_cast<Eigen::Index>(u)) = t.diagonal().real();
        }
        if (!diagonal) {
            continue;
        }
        std::vector<CMat> povm(a.size(), CMat::Zero(d, d));
        double value = 0;
        for (Eigen::Index k = 0; k < d; ++k) {
            Eigen::Index best = 0;
            value += table.row(k).maxCoeff(&best);
            povm[static_cast<size_t>(best)] += projector(v.col(k));
        }
        return GuessResult{value, Povm(complete_povm(std::move(povm)))};
    }
    return std::nullopt;
}

}  // namespace

PguessBracket chancmp::pguess_bracket(const CqEnsemble &e, double tol) {
    std::vector<CMat> a = e.weighted();
    Eigen::Index d = e.dim();

    // Always-available feasible point: guess the likeliest message.
    Eigen::Index top = 0;
    e.weights().maxCoeff(&top);
    std::vector<CMat> trivial(a.size(), CMat::Zero(d, d));
    trivial[static_cast<size_t>(top)] = CMat::Identity(d, d);

    if (a.size() == 1) {
        return PguessBracket{1.0, 1.0, Povm(trivial), BracketMethod::Trivial, true, 0};
    }
    if (a.size() == 2) {
        GuessResult h = helstrom_weighted(a[0], a[1]);
        return PguessBracket{h.value, h.value, h.povm, BracketMethod::Helstrom, true, 0};
    }
    if (operators_commute(a)) {
        if (auto c = commuting_guess(a)) {
            return PguessBracket{c->value, c->value, c->povm, BracketMethod::Commuting, true, 0};
        }
    }

    std::vector<CMat> best = trivial;
    double best_value = success_weighted(a, trivial);
    double upper = std::min(1.0, dual_upper(a, trivial));

    std::vector<CMat> pi = pgm_elements(a);
    constexpr int kMaxIterations = 500;
    int it = 0;
    for (; it <= kMaxIterations; ++it) {
        double value = success_weighted(a, pi);
        if (value > best_value) {
            best_value = value;
            best = pi;
        }
        upper = std::min(upper, dual_upper(a, pi));
        if (upper - best_value <= tol) {
            break;
        }
        if (it < kMaxIterations) {
            pi = refine_step(a, pi);
        }
    }
    PguessBracket out{best_value, std::max(upper, best_value), Povm(best), BracketMethod::Iterative, false, it};
    out.converged = out.upper - out.lower <= tol;
    return out;
}

MinEntropyBracket chancmp::min_entropy_cq(const CqEnsemble &e, double tol) {
    PguessBracket b = pguess_bracket(e, tol);
    // P_guess <= 1, so clamping the lower endpoint at zero stays sound.
    return MinEntropyBracket{std::max(0.0, -std::log2(b.upper)), std::max(0.0, -std::log2(b.lower)), b.converged};
}

CqEnsemble chancmp::ensemble_from_povm(const Povm &povm) {
    auto d = static_cast<double>(povm.dim());
    std::vector<CMat> weighted;
    for (const auto &e : povm.elements()) {
        weighted.push_back(e.transpose() / d);
    }
    return CqEnsemble::from_weighted(weighted);
}

CqEnsemble chancmp::random_ensemble_maxmixed(Eigen::Index d, size_t n_outcomes, unsigned long long seed) {
    if (n_outcomes < 1 || d < 1) {
        throw InvariantViolation("random_ensemble_maxmixed: need at least one outcome and dimension 1");
    }
    if (n_outcomes == 1) {
        return ensemble_from_povm(Povm({CMat::Identity(d, d)}));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<CMat> raw;
    CMat total = CMat::Zero(d, d);
    for (size_t u = 0; u < n_outcomes; ++u) {
        CMat g(d, d);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            double re = normal(rng);
            double im = normal(rng);
            g(i) = cdouble(re, im);
        }
        raw.push_back(g * g.adjoint());
        total += raw.back();
    }
    CMat shape = psd_inv_sqrt(total);
    std::vector<CMat> elements;
    for (const auto &r : raw) {
        elements.push_back(hermitian_part(shape * r * shape));
    }
    return ensemble_from_povm(Povm(std::move(elements)));
}
