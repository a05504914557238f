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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "chancmp/probability.h"
#include "test_util.h"

using namespace chancmp;
using test_util::max_abs;

namespace {

CqEnsemble ensemble(std::vector<double> w, std::vector<CMat> states) {
    std::vector<DensityOperator> rho;
    for (auto &s : states) {
        rho.emplace_back(s);
    }
    return CqEnsemble(Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size())), rho);
}

CMat ket_plus() {
    return CMat::Constant(2, 2, 0.5);
}

// Best projective qubit measurement: the trivial ones {0, I}, then rank-one projectors on a
// Bloch-sphere grid refined to 1e-4 radians around the coarse optimum. P = p1 + Tr[Pi_n (p0 rho0 - p1 rho1)] with Pi_n = (I + n.sigma)/2.
double grid_helstrom(double p0, const CMat &rho0, const CMat &rho1) {
    CMat delta = p0 * rho0 - (1 - p0) * rho1;
    auto value = [&](double theta, double phi) {
        cdouble e(std::cos(phi), std::sin(phi));
        CMat pi(2, 2);
        pi << 1 + std::cos(theta), std::sin(theta) * std::conj(e), std::sin(theta) * e, 1 - std::cos(theta);
        return (1 - p0) + 0.5 * (pi * delta).trace().real();
    };
    double best = -1, bt = 0, bp = 0;
    const double pi = std::acos(-1.0);
    for (int i = 0; i <= 300; ++i) {
        for (int j = 0; j < 600; ++j) {
            double t = pi * i / 300, p = 2 * pi * j / 600;
            double v = value(t, p);
            if (v > best) {
                best = v, bt = t, bp = p;
            }
        }
    }
    for (int i = -120; i <= 120; ++i) {
        for (int j = -120; j <= 120; ++j) {
            best = std::max(best, value(bt + 1e-4 * i, bp + 1e-4 * j));
        }
    }
    return std::max({best, p0, 1 - p0});
}

}  // namespace

TEST(quantum_minentropy, helstrom_examples) {
    auto zero = DensityOperator::basis(2, 0);
    auto one = DensityOperator::basis(2, 1);
    EXPECT_NEAR(helstrom(0.5, zero, 0.5, one).value, 1, 1e-14);
    EXPECT_NEAR(helstrom(0.3, zero, 0.7, zero).value, 0.7, 1e-14);
    auto r = helstrom(0.5, zero, 0.5, DensityOperator(ket_plus()));
    EXPECT_NEAR(r.value, 0.5 + std::sqrt(2.0) / 4, 1e-14);
    EXPECT_NEAR(r.value, 0.853553, 1e-6);
    EXPECT_NEAR(r.value, grid_helstrom(0.5, zero.matrix(), ket_plus()), 1e-4);
    auto e = ensemble({0.5, 0.5}, {zero.matrix(), ket_plus()});
    EXPECT_NEAR(success_probability(e, r.povm), r.value, 1e-14);
}

TEST(quantum_minentropy, helstrom_matches_grid_search) {
    for (unsigned long long seed = 0; seed < 10; ++seed) {
        auto g = test_util::rng(seed);
        double p0 = std::uniform_real_distribution<double>(0.05, 0.95)(g);
        CMat a = test_util::random_density(2, seed * 2 + 1, 1 + seed % 2);
        CMat b = test_util::random_density(2, seed * 2 + 2, 1 + (seed / 2) % 2);
        double exact = helstrom(p0, DensityOperator(a), 1 - p0, DensityOperator(b)).value;
        EXPECT_NEAR(exact, grid_helstrom(p0, a, b), 1e-4) << seed;
        EXPECT_GE(exact + 1e-12, grid_helstrom(p0, a, b));
    }
}

TEST(quantum_minentropy, pgm_examples) {
    auto bell = bell_toolkit(2);
    std::vector<CMat> states(bell.projectors.elements().begin(), bell.projectors.elements().end());
    EXPECT_NEAR(pgm_lower_bound(ensemble({0.25, 0.25, 0.25, 0.25}, states)).value, 1, 1e-12);
    CMat rho = test_util::random_density(3, 1);
    EXPECT_NEAR(pgm_lower_bound(ensemble({1.0 / 3, 1.0 / 3, 1.0 / 3}, {rho, rho, rho})).value, 1.0 / 3, 1e-12);
    double pgm = pgm_lower_bound(ensemble({0.5, 0.5}, {DensityOperator::basis(2, 0).matrix(), ket_plus()})).value;
    EXPECT_LE(pgm, 0.853553390593274 + 1e-12);
    EXPECT_GE(pgm, 0.8);
}

TEST(quantum_minentropy, bracket_binary_is_helstrom) {
    for (unsigned long long seed = 0; seed < 10; ++seed) {
        CMat a = test_util::random_density(3, seed + 1);
        CMat b = test_util::random_density(3, seed + 50, 3);
        auto br = pguess_bracket(ensemble({0.4, 0.6}, {a, b}));
        double h = helstrom(0.4, DensityOperator(a), 0.6, DensityOperator(b)).value;
        EXPECT_EQ(br.method, BracketMethod::Helstrom);
        EXPECT_NEAR(br.lower, h, 1e-9);
        EXPECT_NEAR(br.upper, h, 1e-9);
    }
}

TEST(quantum_minentropy, bracket_commuting_is_classical) {
    for (unsigned long long seed = 0; seed < 10; ++seed) {
        Eigen::MatrixXd joint = test_util::random_joint(3, 4, seed);
        CMat basis = random_unitary(3, seed);
        std::vector<double> w;
        std::vector<CMat> states;
        for (Eigen::Index u = 0; u < 4; ++u) {
            double pu = joint.col(u).sum();
            w.push_back(pu);
            CMat diag = CMat::Zero(3, 3);
            for (Eigen::Index s = 0; s < 3; ++s) {
                diag(s, s) = joint(s, u) / pu;
            }
            states.push_back(basis * diag * basis.adjoint());
        }
        auto br = pguess_bracket(ensemble(w, states));
        double classical = guessing_probability(JointDistribution(joint));
        EXPECT_EQ(br.method, BracketMethod::Commuting);
        EXPECT_NEAR(br.lower, classical, 1e-9);
        EXPECT_NEAR(br.upper, classical, 1e-9);
    }
}

TEST(quantum_minentropy, bracket_bell_states) {
    auto bell = bell_toolkit(2);
    std::vector<CMat> states(bell.projectors.elements().begin(), bell.projectors.elements().end());
    auto br = pguess_bracket(ensemble({0.25, 0.25, 0.25, 0.25}, states));
    EXPECT_NEAR(br.lower, 1, 1e-9);
    EXPECT_NEAR(br.upper, 1, 1e-9);
}

TEST(quantum_minentropy, bracket_general_ensembles) {
    for (unsigned long long seed = 0; seed < 15; ++seed) {
        size_t n = 3 + seed % 3;
        Eigen::Index d = 2 + static_cast<Eigen::Index>(seed % 2);
        std::vector<double> w;
        std::vector<CMat> states;
        auto g = test_util::rng(seed);
        double total = 0;
        for (size_t u = 0; u < n; ++u) {
            w.push_back(std::exponential_distribution<double>(1)(g));
            total += w.back();
            states.push_back(test_util::random_density(d, seed * 10 + u, 1));
        }
        for (auto &x : w) {
            x /= total;
        }
        auto e = ensemble(w, states);
        auto br = pguess_bracket(e);
        EXPECT_LE(*std::max_element(w.begin(), w.end()), br.lower + 1e-12);
        EXPECT_LE(br.lower, br.upper + 1e-12);
        EXPECT_LE(br.upper, 1 + 1e-9);
        EXPECT_NEAR(success_probability(e, br.povm), br.lower, 1e-10);
        EXPECT_GE(br.lower, pgm_lower_bound(e).value - 1e-12);
    }
}

TEST(quantum_minentropy, min_entropy_examples) {
    auto orth = ensemble({0.5, 0.5}, {DensityOperator::basis(2, 0).matrix(), DensityOperator::basis(2, 1).matrix()});
    EXPECT_NEAR(min_entropy_cq(orth).lower, 0, 1e-12);
    CMat rho = test_util::random_density(2, 3);
    auto same = ensemble({0.25, 0.25, 0.25, 0.25}, {rho, rho, rho, rho});
    EXPECT_NEAR(min_entropy_cq(same).lower, 2, 1e-9);
    EXPECT_NEAR(min_entropy_cq(same).upper, 2, 1e-9);
    auto hel = min_entropy_cq(ensemble({0.5, 0.5}, {DensityOperator::basis(2, 0).matrix(), ket_plus()}));
    EXPECT_NEAR(hel.lower, -std::log2(0.5 + std::sqrt(2.0) / 4), 1e-9);
    EXPECT_NEAR(hel.upper, 0.228446, 1e-6);
}

TEST(quantum_minentropy, maximally_mixed_ensembles) {
    auto single = random_ensemble_maxmixed(3, 1, 4);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_NEAR(single.weights()(0), 1, 1e-12);
    EXPECT_LT(max_abs(single.states()[0].matrix() - CMat::Identity(3, 3) / 3), 1e-12);
    for (unsigned long long seed = 0; seed < 100; ++seed) {
        auto e = random_ensemble_maxmixed(3, 9, seed);
        EXPECT_LT(max_abs(e.average() - CMat::Identity(3, 3) / 3), 1e-10) << seed;
    }
    // Steering by {E, I - E} on the reference.
    CMat e0 = test_util::random_density(2, 8) * 0.9;
    auto binary = ensemble_from_povm(Povm({e0, CMat(CMat::Identity(2, 2) - e0)}));
    EXPECT_LT(max_abs(binary.average() - CMat::Identity(2, 2) / 2), 1e-14);
    EXPECT_LT(max_abs(binary.weighted(0) - e0.transpose() / 2), 1e-14);
}

TEST(quantum_minentropy, data_processing) {
    for (unsigned long long seed = 0; seed < 20; ++seed) {
        auto e = random_ensemble_maxmixed(2, 2 + seed % 3, seed);
        auto psi = QuantumChannel::random(2, 2 + seed % 2, 1 + seed % 3, seed + 3);
        auto before = pguess_bracket(e);
        auto after = pguess_bracket(push_ensemble(e, psi));
        EXPECT_LE(after.upper, before.lower + 2e-9) << seed;
    }
}

TEST(quantum_minentropy, commuting_detection) {
    EXPECT_TRUE(operators_commute({DensityOperator::basis(2, 0).matrix(), CMat(CMat::Identity(2, 2))}));
    EXPECT_FALSE(operators_commute({DensityOperator::basis(2, 0).matrix(), ket_plus()}));
}
