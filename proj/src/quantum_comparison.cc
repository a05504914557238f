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

#include "chancmp/quantum_comparison.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "chancmp/errors.h"

using namespace chancmp;

namespace {

constexpr double kWitnessThreshold = 1e-6;

// Reshapes PSD blocks into an exact POVM: S^{-1/2} P S^{-1/2} on the support of S = sum P, with
// the kernel shared evenly.
std::vector<CMat> to_povm(const std::vector<CMat> &blocks) {
    Eigen::Index d = blocks.front().rows();
    CMat total = CMat::Zero(d, d);
    for (const auto &b : blocks) {
        total += b;
    }
    CMat shape = psd_inv_sqrt(total, 1e-12);
    CMat rest = (CMat::Identity(d, d) - positive_projector(total, 1e-12)) / static_cast<double>(blocks.size());
    std::vector<CMat> out;
    for (const auto &b : blocks) {
        out.push_back(project_psd(shape * b * shape) + rest);
    }
    return out;
}

std::string describe(const char *label, double x) {
    std::stringstream ss;
    ss.precision(10);
    ss << label << "=" << x;
    return ss.str();
}

CVec basis_vector(Eigen::Index d, Eigen::Index k) {
    CVec v = CVec::Zero(d);
    v(k) = 1;
    return v;
}

CVec random_pure(Eigen::Index d, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    CVec v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        double re = normal(rng);
        double im = normal(rng);
        v(i) = cdouble(re, im);
    }
    return v.normalized();
}

// Projectors onto the computational basis, the Fourier basis, and the pairwise superpositions
// (|k> + c|l>)/sqrt2 for c in {1, -1, i, -i}.
std::vector<std::pair<std::string, CMat>> structured_effects(Eigen::Index d) {
    std::vector<std::pair<std::string, CMat>> out;
    for (Eigen::Index k = 0; k < d; ++k) {
        out.emplace_back("|" + std::to_string(k) + ">", projector(basis_vector(d, k)));
    }
    if (d > 2) {
        for (Eigen::Index k = 0; k < d; ++k) {
            CVec v(d);
            for (Eigen::Index j = 0; j < d; ++j) {
                v(j) = std::polar(1.0, 2 * M_PI * static_cast<double>(j * k) / static_cast<double>(d));
            }
            out.emplace_back("F" + std::to_string(k), projector(v.normalized()));
        }
    }
    const cdouble phases[4] = {1, -1, cdouble(0, 1), cdouble(0, -1)};
    const char *names[4] = {"+", "-", "+i", "-i"};
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = k + 1; l < d; ++l) {
            for (int c = 0; c < 4; ++c) {
                CVec v = basis_vector(d, k) + phases[c] * basis_vector(d, l);
                out.emplace_back(
                    "(" + std::to_string(k) + names[c] + std::to_string(l) + ")", projector(v.normalized()));
            }
        }
    }
    return out;
}

// P_guess(phi side) - P_guess(phi' side) for the binary ensemble steered by the effect E on aux (x) A.
double binary_probe_slack(const QuantumChannel &phi, const QuantumChannel &phi_prime, Eigen::Index d_aux, const CMat &effect) {
    Eigen::Index dim = effect.rows();
    auto big_d = static_cast<double>(dim);
    CMat a0 = effect.transpose() / big_d;
    CMat a1 = (CMat::Identity(dim, dim) - effect).transpose() / big_d;
    double p = helstrom_weighted(apply_extended(phi, d_aux, a0), apply_extended(phi, d_aux, a1)).value;
    double p_prime =
        helstrom_weighted(apply_extended(phi_prime, d_aux, a0), apply_extended(phi_prime, d_aux, a1)).value;
    return p - p_prime;
}

double witness_objective(const QuantumChannel &phi, const QuantumChannel &phi_prime, Eigen::Index d_aux, const CMat &delta) {
    return trace_norm(apply_extended(phi_prime, d_aux, delta)) - trace_norm(apply_extended(phi, d_aux, delta));
}

// sign(M) for a Hermitian M, zero on the kernel.
CMat hermitian_sign(const CMat &m) {
    Eigh e = eigh(m);
    double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
    Eigen::VectorXd s = e.values.unaryExpr([scale](double x) {
        return std::abs(x) <= 1e-13 * scale ? 0.0 : (x > 0 ? 1.0 : -1.0);
    });
    return e.vectors * s.asDiagonal() * e.vectors.adjoint();
}

std::optional<QuantumViolationWitness> witness_from_delta(
    const QuantumChannel &phi, const QuantumChannel &phi_prime, Eigen::Index d_aux, const CMat &delta) {
    auto [pos, neg] = separable_split(delta, d_aux, phi.d_in());
    double total = 0;
    double pos_total = 0;
    for (const auto &t : pos) {
        total += t.weight;
        pos_total += t.weight;
    }
    for (const auto &t : neg) {
        total += t.weight;
    }
    if (!(total > 0) || pos_total <= 1e-14 || total - pos_total <= 1e-14) {
        return std::nullopt;
    }
    Eigen::Index dim = delta.rows();
    CMat a0 = CMat::Zero(dim, dim);
    CMat a1 = CMat::Zero(dim, dim);
    for (auto &t : pos) {
        t.weight /= total;
        a0 += t.weight * kron(t.aux, t.sys);
    }
    for (auto &t : neg) {
        t.weight /= total;
        a1 += t.weight * kron(t.aux, t.sys);
    }
    GuessResult h = helstrom_weighted(apply_extended(phi, d_aux, a0), apply_extended(phi, d_aux, a1));
    GuessResult h_prime =
        helstrom_weighted(apply_extended(phi_prime, d_aux, a0), apply_extended(phi_prime, d_aux, a1));
    double gap = h_prime.value - h.value;
    if (!(gap > kWitnessThreshold)) {
        return std::nullopt;
    }
    return QuantumViolationWitness{
        d_aux,
        std::move(pos),
        std::move(neg),
        CqEnsemble::from_weighted({a0, a1}),
        gap,
        h.value,
        h_prime.value,
        h.povm,
        h_prime.povm,
    };
}

}  // namespace

double chancmp::correspondence_residual(
    const QuantumChannel &phi, const QuantumChannel &phi_prime, const Povm &q, const Povm &p) {
    if (q.size() != p.size()) {
        throw DimensionMismatch("correspondence_residual: POVMs with different outcome sets");
    }
    double worst = 0;
    for (size_t u = 0; u < q.size(); ++u) {
        worst = std::max(worst, operator_norm(phi_prime.apply_dual(q[u]) - phi.apply_dual(p[u])));
    }
    return worst;
}

FeasibilityResult chancmp::povm_feasibility(
    const QuantumChannel &phi, const QuantumChannel &phi_prime, const Povm &q, const FeasibilityOptions &options) {
    if (phi.d_in() != phi_prime.d_in()) {
        throw DimensionMismatch("povm_feasibility: channels act on different input spaces");
    }
    if (q.dim() != phi_prime.d_out()) {
        throw DimensionMismatch("povm_feasibility: POVM does not act on the output of the second channel");
    }
    size_t n = q.size();
    Eigen::Index d = phi.d_out();
    Eigen::Index d2 = d * d;
    Eigen::Index din2 = phi.d_in() * phi.d_in();

    std::vector<CMat> targets;
    for (const auto &e : q.elements()) {
        targets.push_back(hermitian_part(phi_prime.apply_dual(e)));
    }

    // The trace dual in real Hermitian coordinates.
    Eigen::MatrixXd dual(din2, d2);
    std::vector<CMat> basis = hermitian_basis(d);
    for (Eigen::Index k = 0; k < d2; ++k) {
        dual.col(k) = hermitian_to_real(phi.apply_dual(basis[static_cast<size_t>(k)]));
    }

    auto nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nn * din2 + d2, nn * d2);
    Eigen::VectorXd b(nn * din2 + d2);
    for (Eigen::Index u = 0; u < nn; ++u) {
        a.block(u * din2, u * d2, din2, d2) = dual;
        b.segment(u * din2, din2) = hermitian_to_real(targets[static_cast<size_t>(u)]);
        a.block(nn * din2, u * d2, d2, d2).setIdentity();
    }
    b.tail(d2) = hermitian_to_real(CMat::Identity(d, d));
    AffineProjector affine(std::move(a), std::move(b));

    auto score = [&](const std::vector<CMat> &povm) {
        double worst = 0;
        for (size_t u = 0; u < n; ++u) {
            worst = std::max(worst, operator_norm(targets[u] - phi.apply_dual(povm[u])));
        }
        return worst;
    };

    DykstraOptions dopt;
    dopt.max_iterations = options.max_iterations;
    dopt.stall_window = options.stall_window;
    dopt.stall_min_iterations = 2 * options.stall_window;
    dopt.target_residual = 1e-2 * options.tolerance;
    std::vector<CMat> start(n, CMat::Identity(d, d) / static_cast<double>(n));
    DykstraResult run = dykstra_psd_affine(
        n, d, affine, stack_blocks(start), [&](const std::vector<CMat> &blocks) { return score(to_povm(blocks)); }, dopt);

    std::vector<CMat> povm = to_povm(run.psd_blocks);
    double residual = score(povm);
    if (residual <= options.tolerance) {
        Povm p(povm);
        return PovmCorrespondence{q, p, residual, run.iterations};
    }
    InfeasibleCorrespondence out;
    out.residual = residual;
    out.iteration_limit = run.stop == DykstraStop::IterationLimit;
    out.iterations = run.iterations;
    for (size_t u = 0; u < n; ++u) {
        out.violation_direction.push_back(hermitian_part(targets[u] - phi.apply_dual(povm[u])));
    }
    return out;
}

SufficiencyReport chancmp::test_sufficiency(
    const QuantumChannel &phi, const QuantumChannel &phi_prime, int n_trials, unsigned long long seed) {
    if (phi.d_in() != phi_prime.d_in()) {
        throw DimensionMismatch("test_sufficiency: channels act on different input spaces");
    }
    Eigen::Index d_aux = phi_prime.d_out();
    Eigen::Index d_a = phi.d_in();
    Eigen::Index dim = d_aux * d_a;
    SufficiencyReport report;
    report.worst_slack = std::numeric_limits<double>::infinity();
    auto record = [&](double slack, const std::string &name) {
        ++report.probes;
        if (slack < report.worst_slack) {
            report.worst_slack = slack;
            report.worst_probe = name;
        }
    };

    auto aux_effects = structured_effects(d_aux);
    aux_effects.insert(aux_effects.begin(), {"I", CMat::Identity(d_aux, d_aux)});
    auto sys_effects = structured_effects(d_a);
    for (const auto &[fa, f] : aux_effects) {
        for (const auto &[ga, g] : sys_effects) {
            record(binary_probe_slack(phi, phi_prime, d_aux, kron(f, g)), fa + " x " + ga);
        }
    }

    std::mt19937_64 rng(seed);
    for (int t = 0; t < n_trials; ++t) {
        CMat f = (t % 3 == 0) ? CMat::Identity(d_aux, d_aux) : projector(random_pure(d_aux, rng));
        CMat g = projector(random_pure(d_a, rng));
        if (t % 4 == 3 && d_a > 2) {
            g += projector(random_pure(d_a, rng));
            g = positive_projector(g, 1e-12);
        }
        record(binary_probe_slack(phi, phi_prime, d_aux, kron(f, g)), "random#" + std::to_string(t));
    }

    // Product basis ensembles; kept only when both sides evaluate exactly.
    std::vector<CMat> weighted;
    for (Eigen::Index i = 0; i < d_aux; ++i) {
        for (Eigen::Index j = 0; j < d_a; ++j) {
            weighted.push_back(kron(matrix_unit(d_aux, i, i), matrix_unit(d_a, j, j)) / static_cast<double>(dim));
        }
    }
    auto push = [&](const QuantumChannel &c) {
        std::vector<CMat> out;
        for (const auto &w : weighted) {
            out.push_back(apply_extended(c, d_aux, w));
        }
        return CqEnsemble::from_weighted(out);
    };
    PguessBracket b = pguess_bracket(push(phi));
    PguessBracket b_prime = pguess_bracket(push(phi_prime));
    if (b.converged && b_prime.converged && b.method != BracketMethod::Iterative &&
        b_prime.method != BracketMethod::Iterative) {
        record(b.lower - b_prime.lower, "product computational basis");
    }

    report.verdict = report.worst_slack < -kWitnessThreshold ? SufficiencyVerdict::ViolationFound
                                                             : SufficiencyVerdict::NoViolationFound;
    return report;
}

std::pair<std::vector<ProductTerm>, std::vector<ProductTerm>> chancmp::separable_split(
    const CMat &delta, Eigen::Index d_aux, Eigen::Index d_sys) {
    if (delta.rows() != d_aux * d_sys || delta.cols() != d_aux * d_sys) {
        throw DimensionMismatch("separable_split: operator does not act on aux (x) sys");
    }
    using Terms = std::vector<ProductTerm>;
    auto weight_of = [](const Terms &a, const Terms &b) {
        double w = 0;
        for (const auto &t : a) {
            w += t.weight;
        }
        for (const auto &t : b) {
            w += t.weight;
        }
        return w;
    };
    auto push = [](Terms &terms, double w, const CMat &aux, const CMat &sys) {
        double ta = aux.trace().real();
        double ts = sys.trace().real();
        double weight = w * ta * ts;
        if (weight > 1e-15) {
            terms.push_back(ProductTerm{weight, aux / ta, sys / ts});
        }
    };

    if (d_aux == 1 || d_sys == 1) {
        Terms pos, neg;
        Eigh e = eigh(delta);
        CMat one = CMat::Ones(1, 1);
        for (Eigen::Index k = 0; k < e.values.size(); ++k) {
            CMat v = projector(e.vectors.col(k));
            double lambda = e.values(k);
            Terms &side = lambda > 0 ? pos : neg;
            if (d_aux == 1) {
                push(side, std::abs(lambda), one, v);
            } else {
                push(side, std::abs(lambda), v, one);
            }
        }
        return {pos, neg};
    }

    // Operator-Schmidt decomposition in orthonormal Hermitian bases, each factor split into its
    // positive and negative parts.
    Terms schmidt_pos, schmidt_neg;
    {
        auto ba = hermitian_basis(d_aux);
        auto bs = hermitian_basis(d_sys);
        Eigen::MatrixXd c(d_aux * d_aux, d_sys * d_sys);
        for (size_t i = 0; i < ba.size(); ++i) {
            for (size_t j = 0; j < bs.size(); ++j) {
                c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    (kron(ba[i], bs[j]) * delta).trace().real();
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
        for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
            double s = svd.singularValues()(k);
            if (s <= 1e-15) {
                continue;
            }
            CMat g = real_to_hermitian(svd.matrixU().col(k), d_aux);
            CMat h = real_to_hermitian(svd.matrixV().col(k), d_sys);
            auto [gp, gn] = jordan_split(g);
            auto [hp, hn] = jordan_split(h);
            push(schmidt_pos, s, gp, hp);
            push(schmidt_pos, s, gn, hn);
            push(schmidt_neg, s, gp, hn);
            push(schmidt_neg, s, gn, hp);
        }
    }

    // Expansion over products of informationally complete POVM elements.
    Terms frame_pos, frame_neg;
    {
        InformationallyComplete ia = ic_povm_with_dual(d_aux);
        InformationallyComplete is = ic_povm_with_dual(d_sys);
        for (size_t y = 0; y < ia.povm.size(); ++y) {
            for (size_t z = 0; z < is.povm.size(); ++z) {
                double c = (kron(ia.dual.operators[y], is.dual.operators[z]) * delta).trace().real();
                if (c > 0) {
                    push(frame_pos, c, ia.povm[y], is.povm[z]);
                } else if (c < 0) {
                    push(frame_neg, -c, ia.povm[y], is.povm[z]);
                }
            }
        }
    }

    if (weight_of(frame_pos, frame_neg) < weight_of(schmidt_pos, schmidt_neg)) {
        return {frame_pos, frame_neg};
    }
    return {schmidt_pos, schmidt_neg};
}

WitnessCheck chancmp::reevaluate_witness(const QuantumChannel &phi, const QuantumChannel &phi_prime, const QuantumViolationWitness &w) {
    Eigen::Index dim = w.d_aux * phi.d_in();
    CMat a0 = CMat::Zero(dim, dim);
    CMat a1 = CMat::Zero(dim, dim);
    for (const auto &t : w.positive_terms) {
        a0 += t.weight * kron(t.aux, t.sys);
    }
    for (const auto &t : w.negative_terms) {
        a1 += t.weight * kron(t.aux, t.sys);
    }
    WitnessCheck c;
    c.decomposition_error = std::max((a0 - w.ensemble.weighted(0)).cwiseAbs().maxCoeff(),
                                     (a1 - w.ensemble.weighted(1)).cwiseAbs().maxCoeff());
    c.phi_side_pguess =
        helstrom_weighted(apply_extended(phi, w.d_aux, a0), apply_extended(phi, w.d_aux, a1)).value;
    c.phi_prime_side_pguess =
        helstrom_weighted(apply_extended(phi_prime, w.d_aux, a0), apply_extended(phi_prime, w.d_aux, a1)).value;
    c.gap = c.phi_prime_side_pguess - c.phi_side_pguess;
    return c;
}

std::optional<QuantumViolationWitness> chancmp::extract_quantum_violation(
    const QuantumChannel &phi,
    const QuantumChannel &phi_prime,
    Eigen::Index d_aux,
    const std::vector<CMat> &direction) {
    if (phi.d_in() != phi_prime.d_in()) {
        throw DimensionMismatch("extract_quantum_violation: channels act on different input spaces");
    }
    Eigen::Index d_a = phi.d_in();
    Eigen::Index dim = d_aux * d_a;
    std::vector<CMat> candidates;

    if (!direction.empty()) {
        std::vector<HermitianOperator> tuple;
        for (const auto &r : direction) {
            if (r.rows() != dim) {
                throw DimensionMismatch("extract_quantum_violation: direction does not act on aux (x) A");
            }
            tuple.emplace_back(hermitian_part(CMat(r.transpose())));
            candidates.push_back(hermitian_part(r));
        }
        ShiftedPovm shifted = hermitian_tuple_to_povm(tuple);
        std::vector<CMat> steered;
        for (const auto &e : shifted.povm.elements()) {
            steered.push_back(e.transpose() / static_cast<double>(dim));
        }
        size_t n = steered.size();
        auto add_split = [&](const std::vector<bool> &in_first) {
            CMat delta = CMat::Zero(dim, dim);
            for (size_t u = 0; u < n; ++u) {
                delta += in_first[u] ? steered[u] : CMat(-steered[u]);
            }
            candidates.push_back(delta);
        };
        if (n <= 10) {
            // The last outcome always sits in the second group, so each split appears once.
            for (size_t mask = 1; mask < (size_t{1} << (n - 1)); ++mask) {
                std::vector<bool> in_first(n, false);
                for (size_t u = 0; u + 1 < n; ++u) {
                    in_first[u] = (mask >> u) & 1;
                }
                add_split(in_first);
            }
        } else {
            std::mt19937_64 rng(n);
            for (size_t u = 0; u < n; ++u) {
                std::vector<bool> in_first(n, false);
                in_first[u] = true;
                add_split(in_first);
            }
            for (int s = 0; s < 256; ++s) {
                std::vector<bool> in_first(n);
                for (size_t u = 0; u < n; ++u) {
                    in_first[u] = rng() & 1;
                }
                add_split(in_first);
            }
        }
    }

    // Structured probes: a basis flip on A, and correlations with the auxiliary system.
    auto effects = structured_effects(d_a);
    CMat aux_id = CMat::Identity(d_aux, d_aux) / static_cast<double>(d_aux);
    for (const auto &[name, g] : effects) {
        candidates.push_back(kron(aux_id, 2 * g - CMat::Identity(d_a, d_a)));
    }
    if (d_aux == d_a && d_aux > 1) {
        CMat bell = maximally_entangled(d_a).matrix();
        candidates.push_back(bell);
        candidates.push_back(bell - CMat::Identity(dim, dim) / static_cast<double>(dim));
        candidates.push_back(CMat(bell.transpose()) - CMat::Identity(dim, dim) / static_cast<double>(dim));
    }

    // Subgradient ascent of |Phi'(Delta)|_1 - |Phi(Delta)|_1 on the Frobenius sphere.
    auto ascend = [&](CMat delta) {
        delta /= delta.norm();
        CMat best = delta;
        double best_ratio = -std::numeric_limits<double>::infinity();
        for (int it = 0; it < 150; ++it) {
            CMat out = apply_extended(phi, d_aux, delta);
            CMat out_prime = apply_extended(phi_prime, d_aux, delta);
            double ratio = (trace_norm(out_prime) - trace_norm(out)) / trace_norm(delta);
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best = delta;
            }
            CMat grad = apply_extended_dual(phi_prime, d_aux, hermitian_sign(out_prime)) -
                        apply_extended_dual(phi, d_aux, hermitian_sign(out));
            grad = hermitian_part(grad);
            grad -= (grad.cwiseProduct(delta.conjugate())).sum().real() * delta;
            double gnorm = grad.norm();
            if (gnorm < 1e-12) {
                break;
            }
            delta += (0.3 / std::sqrt(1.0 + it)) * grad / gnorm;
            delta /= delta.norm();
        }
        return best;
    };

    std::vector<std::pair<double, size_t>> ranked;
    for (size_t i = 0; i < candidates.size(); ++i) {
        double norm = trace_norm(candidates[i]);
        if (norm > 1e-12) {
            ranked.emplace_back(witness_objective(phi, phi_prime, d_aux, candidates[i]) / norm, i);
        }
    }
    std::sort(ranked.begin(), ranked.end(), std::greater<>());
    std::vector<CMat> starts;
    for (size_t i = 0; i < std::min<size_t>(4, ranked.size()); ++i) {
        starts.push_back(candidates[ranked[i].second]);
    }
    std::mt19937_64 rng(static_cast<unsigned long long>(dim) * 7919);
    std::normal_distribution<double> normal;
    for (int s = 0; s < 4; ++s) {
        CMat g(dim, dim);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            double re = normal(rng);
            double im = normal(rng);
            g(i) = cdouble(re, im);
        }
        starts.push_back(hermitian_part(g));
    }
    for (const auto &s : starts) {
        candidates.push_back(ascend(s));
    }

    std::optional<QuantumViolationWitness> best;
    for (const auto &delta : candidates) {
        if (trace_norm(delta) <= 1e-12 || witness_objective(phi, phi_prime, d_aux, delta) <= 1e-9) {
            continue;
        }
        auto w = witness_from_delta(phi, phi_prime, d_aux, delta);
        if (w && (!best || w->gap > best->gap)) {
            best = std::move(w);
        }
    }
    return best;
}

double chancmp::degrading_residual(const QuantumChannel &psi, const QuantumChannel &phi, const QuantumChannel &phi_prime) {
    return (compose_quantum(psi, phi).choi() - phi_prime.choi()).norm();
}

QuantumChannel chancmp::teleportation_channel(const Povm &p, Eigen::Index d_in, Eigen::Index d_out) {
    if (p.size() != static_cast<size_t>(d_out * d_out) || p.dim() != d_out * d_in) {
        throw DimensionMismatch("teleportation_channel: POVM must have d_out^2 outcomes on d_out * d_in");
    }
    BellToolkit bell = bell_toolkit(d_out);
    CMat phi_plus = maximally_entangled(d_out).matrix();
    CMat id = CMat::Identity(d_out, d_out);
    std::vector<CMat> lifted;
    for (const auto &e : p.elements()) {
        lifted.push_back(kron(id, e));
    }
    std::vector<size_t> dims{static_cast<size_t>(d_out), static_cast<size_t>(d_out), static_cast<size_t>(d_in)};
    return QuantumChannel::from_map(d_in, d_out, [&](const CMat &x) {
        CMat joint = kron(phi_plus, x);
        CMat out = CMat::Zero(d_out, d_out);
        for (size_t u = 0; u < lifted.size(); ++u) {
            CMat reduced = partial_trace(joint * lifted[u], dims, {1, 2});
            out += bell.corrections[u] * reduced * bell.corrections[u].adjoint();
        }
        return out;
    });
}

ChoiFeasibility chancmp::choi_space_feasibility(const QuantumChannel &phi, const QuantumChannel &phi_prime, const FeasibilityOptions &options) {
    if (phi.d_in() != phi_prime.d_in()) {
        throw DimensionMismatch("choi_space_feasibility: channels act on different input spaces");
    }
    Eigen::Index d_a = phi.d_in();
    Eigen::Index d_b = phi.d_out();
    Eigen::Index d_bp = phi_prime.d_out();
    Eigen::Index m = d_b * d_bp;
    std::vector<size_t> dims{static_cast<size_t>(d_b), static_cast<size_t>(d_bp)};

    auto basis = hermitian_basis(m);
    Eigen::Index rows_tp = d_b * d_b;
    Eigen::Index rows_comp = (d_a * d_bp) * (d_a * d_bp);
    Eigen::MatrixXd a(rows_tp + rows_comp, m * m);
    for (Eigen::Index k = 0; k < m * m; ++k) {
        const CMat &j = basis[static_cast<size_t>(k)];
        a.col(k).head(rows_tp) = hermitian_to_real(partial_trace(j, dims, {1}));
        CMat comp = choi_of_map(d_a, d_bp, [&](const CMat &x) { return apply_choi(j, d_b, d_bp, phi.apply(x)); });
        a.col(k).tail(rows_comp) = hermitian_to_real(comp);
    }
    Eigen::VectorXd b(rows_tp + rows_comp);
    b.head(rows_tp) = hermitian_to_real(CMat::Identity(d_b, d_b) / static_cast<double>(d_b));
    b.tail(rows_comp) = hermitian_to_real(phi_prime.choi());
    Eigen::MatrixXd a_copy = a;
    AffineProjector affine(std::move(a), b);

    auto score = [&](const std::vector<CMat> &blocks) { return (a_copy * hermitian_to_real(blocks[0]) - b).norm(); };
    DykstraOptions dopt;
    dopt.max_iterations = options.max_iterations;
    dopt.stall_window = options.stall_window;
    dopt.stall_min_iterations = 2 * options.stall_window;
    dopt.target_residual = 1e-2 * options.tolerance;
    CMat start = CMat::Identity(m, m) / static_cast<double>(m);
    DykstraResult run = dykstra_psd_affine(1, m, affine, hermitian_to_real(start), score, dopt);

    ChoiFeasibility out;
    out.residual = score(run.psd_blocks);
    out.iterations = run.iterations;
    out.feasible = out.residual <= options.tolerance;
    if (out.feasible) {
        // Restore exact trace preservation: (T^{-1/2} (x) I) J (T^{-1/2} (x) I) with T = d_b Tr_out J.
        CMat j = run.psd_blocks[0];
        CMat t = static_cast<double>(d_b) * partial_trace(j, dims, {1});
        CMat fix = kron(psd_inv_sqrt(t), CMat::Identity(d_bp, d_bp));
        out.psi = QuantumChannel(fix * j * fix, d_b, d_bp);
    }
    return out;
}

QuantumVerdict chancmp::find_degrading_quantum(const QuantumChannel &phi, const QuantumChannel &phi_prime) {
    if (phi.d_in() != phi_prime.d_in()) {
        throw DimensionMismatch("find_degrading_quantum: channels act on different input spaces");
    }
    Eigen::Index d_aux = phi_prime.d_out();
    if (d_aux == 1) {
        QuantumChannel trace = QuantumChannel::constant(phi.d_out(), DensityOperator(CMat::Ones(1, 1)));
        return QuantumDegradingCertificate{trace, degrading_residual(trace, phi, phi_prime), 0, std::nullopt};
    }
    QuantumChannel ext = extend_with_identity(phi, d_aux);
    QuantumChannel ext_prime = extend_with_identity(phi_prime, d_aux);
    BellToolkit bell = bell_toolkit(d_aux);
    FeasibilityResult primary = povm_feasibility(ext, ext_prime, bell.projectors);
    ChoiFeasibility secondary = choi_space_feasibility(phi, phi_prime);

    auto dump = [&](const std::string &extra) {
        std::stringstream ss;
        ss << "primary: ";
        if (auto *ok = std::get_if<PovmCorrespondence>(&primary)) {
            ss << "feasible " << describe("residual", ok->residual) << " iterations=" << ok->iterations;
        } else {
            auto &bad = std::get<InfeasibleCorrespondence>(primary);
            ss << "infeasible " << describe("residual", bad.residual) << " iterations=" << bad.iterations
               << (bad.iteration_limit ? " (iteration limit)" : "");
        }
        ss << "; choi path: " << (secondary.feasible ? "feasible " : "infeasible ")
           << describe("residual", secondary.residual) << " iterations=" << secondary.iterations;
        if (!extra.empty()) {
            ss << "; " << extra;
        }
        return ss.str();
    };

    if (auto *ok = std::get_if<PovmCorrespondence>(&primary)) {
        QuantumChannel psi = teleportation_channel(ok->p, phi.d_out(), d_aux);
        double residual = degrading_residual(psi, phi, phi_prime);
        if (!secondary.feasible || residual > 1e-6) {
            throw AmbiguousVerdict(
                "find_degrading_quantum: the two feasibility routes disagree",
                dump(describe("teleportation residual", residual)));
        }
        return QuantumDegradingCertificate{psi, residual, ok->residual, secondary.residual};
    }
    if (secondary.feasible) {
        throw AmbiguousVerdict("find_degrading_quantum: the two feasibility routes disagree", dump(""));
    }
    const auto &bad = std::get<InfeasibleCorrespondence>(primary);
    auto witness = extract_quantum_violation(phi, phi_prime, d_aux, bad.violation_direction);
    if (!witness) {
        throw AmbiguousVerdict("find_degrading_quantum: infeasible but no witness found", dump("no witness"));
    }
    return *witness;
}

CMat chancmp::classical_output_basis(const QuantumChannel &phi_prime, double tol) {
    std::vector<CMat> outputs;
    for (const auto &b : hermitian_basis(phi_prime.d_in())) {
        outputs.push_back(phi_prime.apply(b));
    }
    if (!operators_commute(outputs, tol)) {
        throw NotClassicalOutput("classical_output_basis: channel outputs do not commute");
    }
    Eigen::Index d = phi_prime.d_out();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.5, 1.5);
    for (int attempt = 0; attempt < 5; ++attempt) {
        CMat combo = CMat::Zero(d, d);
        for (const auto &o : outputs) {
            combo += unif(rng) * o;
        }
        CMat v = eigh(combo).vectors;
        bool diagonal = true;
        for (const auto &o : outputs) {
            CMat t = v.adjoint() * o * v;
            t.diagonal().setZero();
            if (t.size() > 0 && t.cwiseAbs().maxCoeff() > tol) {
                diagonal = false;
                break;
            }
        }
        if (diagonal) {
            return v;
        }
    }
    throw NotClassicalOutput("classical_output_basis: no common eigenbasis found");
}

QuantumVerdict chancmp::semiclassical_degrading(const QuantumChannel &phi, const QuantumChannel &phi_prime) {
    if (phi.d_in() != phi_prime.d_in()) {
        throw DimensionMismatch("semiclassical_degrading: channels act on different input spaces");
    }
    CMat v = classical_output_basis(phi_prime);
    Eigen::Index d = phi_prime.d_out();
    std::vector<CMat> q;
    std::vector<DensityOperator> states;
    for (Eigen::Index u = 0; u < d; ++u) {
        q.push_back(projector(v.col(u)));
        states.push_back(DensityOperator::pure(v.col(u)));
    }
    FeasibilityResult feas = povm_feasibility(phi, phi_prime, Povm(q));
    if (auto *ok = std::get_if<PovmCorrespondence>(&feas)) {
        QuantumChannel psi = QuantumChannel::measure_prepare(ok->p, states);
        return QuantumDegradingCertificate{psi, degrading_residual(psi, phi, phi_prime), ok->residual, std::nullopt};
    }
    const auto &bad = std::get<InfeasibleCorrespondence>(feas);
    auto witness = extract_quantum_violation(phi, phi_prime, 1, bad.violation_direction);
    if (!witness) {
        std::stringstream ss;
        ss << describe("residual", bad.residual) << " iterations=" << bad.iterations;
        throw AmbiguousVerdict("semiclassical_degrading: infeasible but no witness found", ss.str());
    }
    return *witness;
}

CMat StatisticalMorphism::apply(const CMat &x) const {
    if (x.rows() != d_in || x.cols() != d_in) {
        throw DimensionMismatch("StatisticalMorphism::apply: input dimension mismatch");
    }
    CMat out = CMat::Zero(d_out, d_out);
    for (size_t y = 0; y < p.size(); ++y) {
        out += (p[y] * x).trace() * dual[y];
    }
    return out;
}

StatisticalMorphism chancmp::build_statistical_morphism(const QuantumChannel &phi, const QuantumChannel &phi_prime) {
    InformationallyComplete ic = ic_povm_with_dual(phi_prime.d_out());
    FeasibilityResult feas = povm_feasibility(phi, phi_prime, ic.povm);
    auto *ok = std::get_if<PovmCorrespondence>(&feas);
    if (!ok) {
        throw InvariantViolation(
            "build_statistical_morphism: no POVM correspondence for the informationally complete POVM (" +
            describe("residual", std::get<InfeasibleCorrespondence>(feas).residual) + ")");
    }
    StatisticalMorphism g;
    g.d_in = phi.d_out();
    g.d_out = phi_prime.d_out();
    g.p = ok->p.elements();
    g.dual = ic.dual.operators;
    g.correspondence_residual = ok->residual;
    auto basis = hermitian_basis(g.d_in);
    g.matrix.resize(g.d_out * g.d_out, g.d_in * g.d_in);
    for (size_t k = 0; k < basis.size(); ++k) {
        g.matrix.col(static_cast<Eigen::Index>(k)) = hermitian_to_real(g.apply(basis[k]));
    }
    return g;
}

MorphismChecks chancmp::check_statistical_morphism(
    const StatisticalMorphism &gamma,
    const QuantumChannel &phi,
    const QuantumChannel &phi_prime,
    int n_samples,
    unsigned long long seed) {
    MorphismChecks c;
    Eigen::Index d = gamma.d_in;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            CMat gij = gamma.apply(matrix_unit(d, i, j));
            CMat gji = gamma.apply(matrix_unit(d, j, i));
            c.hermiticity_error = std::max(c.hermiticity_error, (CMat(gij.adjoint()) - gji).cwiseAbs().maxCoeff());
            c.trace_error = std::max(c.trace_error, std::abs(gij.trace() - cdouble(i == j ? 1.0 : 0.0)));
        }
    }
    Eigen::Index da = phi.d_in();
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            CMat e = matrix_unit(da, i, j);
            c.composition_error =
                std::max(c.composition_error, (gamma.apply(phi.apply(e)) - phi_prime.apply(e)).cwiseAbs().maxCoeff());
        }
    }
    c.min_range_eigenvalue = std::numeric_limits<double>::infinity();
    for (int s = 0; s < n_samples; ++s) {
        DensityOperator rho = random_state(da, seed + static_cast<unsigned long long>(s), 1 + s % 2);
        c.min_range_eigenvalue = std::min(c.min_range_eigenvalue, min_eigenvalue(gamma.apply(phi.apply(rho.matrix()))));
    }
    return c;
}
