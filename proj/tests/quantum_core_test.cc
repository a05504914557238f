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

#include "chancmp/quantum_core.h"

#include <gtest/gtest.h>

#include "chancmp/errors.h"
#include "test_util.h"

using namespace chancmp;
using test_util::max_abs;

namespace {

CMat pauli_z() {
    CMat z = CMat::Zero(2, 2);
    z(0, 0) = 1;
    z(1, 1) = -1;
    return z;
}

CMat pauli_x() {
    CMat x = CMat::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1;
    return x;
}

}  // namespace

TEST(quantum_core, apply_examples) {
    CMat rho = test_util::random_density(2, 1);
    EXPECT_LT(max_abs(QuantumChannel::identity(2).apply(rho) - rho), 1e-14);
    EXPECT_LT(max_abs(QuantumChannel::depolarizing(2, 0).apply(rho) - CMat::Identity(2, 2) / 2), 1e-14);
    CMat out = QuantumChannel::depolarizing(2, 0.5).apply(DensityOperator::basis(2, 0).matrix());
    EXPECT_NEAR(out(0, 0).real(), 0.75, 1e-14);
    EXPECT_NEAR(out(1, 1).real(), 0.25, 1e-14);
    EXPECT_NEAR(std::abs(out(0, 1)), 0, 1e-14);
    EXPECT_THROW(QuantumChannel::identity(2).apply(CMat::Identity(3, 3)), DimensionMismatch);
}

TEST(quantum_core, depolarizing_choi_matches_closed_form) {
    for (double t : {-1.0 / 3, 0.0, 0.25, 0.9, 1.0}) {
        auto c = QuantumChannel::depolarizing(2, t);
        EXPECT_LT(max_abs(c.choi() - test_util::depolarizing_choi(t)), 1e-14);
        Eigen::VectorXd ev = eigh(c.choi()).values;
        EXPECT_NEAR(ev(3), std::max((1 + 3 * t) / 4, (1 - t) / 4), 1e-12);
        EXPECT_NEAR(ev(0), std::min((1 + 3 * t) / 4, (1 - t) / 4), 1e-12);
    }
    EXPECT_THROW(QuantumChannel::depolarizing(2, -0.4), InvariantViolation);
}

TEST(quantum_core, composition) {
    CMat rho = test_util::random_density(2, 2);
    auto chi = QuantumChannel::random(3, 2, 2, 5);
    EXPECT_LT(max_abs(compose_quantum(QuantumChannel::identity(2), chi).choi() - chi.choi()), 1e-14);
    for (auto [t, s] : {std::pair{0.9, 0.5}, std::pair{-0.2, 0.7}, std::pair{0.3, 0.3}}) {
        auto composed = compose_quantum(QuantumChannel::depolarizing(2, t), QuantumChannel::depolarizing(2, s));
        EXPECT_LT(max_abs(composed.choi() - test_util::depolarizing_choi(t * s)), 1e-14);
        // Shrink factors multiply on the Pauli operators.
        EXPECT_LT(max_abs(composed.apply(pauli_x()) - t * s * pauli_x()), 1e-14);
    }
    auto psi = QuantumChannel::random(2, 3, 3, 7);
    auto after_full = compose_quantum(psi, QuantumChannel::depolarizing(2, 0));
    CMat target = psi.apply(CMat::Identity(2, 2) / 2);
    EXPECT_LT(max_abs(after_full.apply(rho) - target), 1e-13);
    EXPECT_THROW(compose_quantum(psi, psi), DimensionMismatch);
}

TEST(quantum_core, extension_with_identity) {
    auto phi = QuantumChannel::random(2, 3, 2, 11);
    EXPECT_EQ(extend_with_identity(phi, 1).choi(), phi.choi());
    auto id4 = extend_with_identity(QuantumChannel::identity(2), 2);
    EXPECT_LT(max_abs(id4.choi() - QuantumChannel::identity(4).choi()), 1e-14);

    CMat bell = maximally_entangled(2).matrix();
    CMat out = extend_with_identity(QuantumChannel::depolarizing(2, 0), 2).apply(bell);
    EXPECT_LT(max_abs(out - CMat::Identity(4, 4) / 4), 1e-14);

    CMat x = test_util::random_density(6, 3, 6);
    EXPECT_LT(max_abs(apply_extended(phi, 3, x) - extend_with_identity(phi, 3).apply(x)), 1e-13);
    CMat y = test_util::random_density(9, 4);
    EXPECT_LT(max_abs(apply_extended_dual(phi, 3, y) - extend_with_identity(phi, 3).apply_dual(y)), 1e-13);
}

TEST(quantum_core, maximally_entangled_marginals) {
    EXPECT_NEAR(maximally_entangled(1).matrix()(0, 0).real(), 1, 1e-15);
    CMat phi2 = maximally_entangled(2).matrix();
    EXPECT_NEAR(phi2(0, 3).real(), 0.5, 1e-15);
    EXPECT_NEAR(phi2(1, 1).real(), 0, 1e-15);
    EXPECT_LT(max_abs(partial_trace(phi2, {2, 2}, {1}) - CMat::Identity(2, 2) / 2), 1e-15);
    CMat phi3 = maximally_entangled(3).matrix();
    EXPECT_LT(max_abs(partial_trace(phi3, {3, 3}, {0}) - CMat::Identity(3, 3) / 3), 1e-15);
}

TEST(quantum_core, choi_marginals) {
    for (unsigned long long seed = 0; seed < 10; ++seed) {
        auto phi = QuantumChannel::random(2 + seed % 2, 2 + seed % 3, 2 + seed % 2, seed);
        auto d_in = static_cast<size_t>(phi.d_in()), d_out = static_cast<size_t>(phi.d_out());
        EXPECT_LT(max_abs(partial_trace(phi.choi(), {d_in, d_out}, {1}) - CMat::Identity(phi.d_in(), phi.d_in()) / phi.d_in()), 1e-12);
        EXPECT_NEAR(partial_trace(phi.choi(), {d_in, d_out}, {0}).trace().real(), 1, 1e-12);
        EXPECT_GE(min_eigenvalue(phi.choi()), -1e-12);
    }
}

TEST(quantum_core, constructors_agree) {
    CMat u = random_unitary(3, 4);
    EXPECT_LT(max_abs(u.adjoint() * u - CMat::Identity(3, 3)), 1e-13);
    auto by_unitary = QuantumChannel::unitary(u);
    auto by_kraus = QuantumChannel::from_kraus({u});
    auto by_map = QuantumChannel::from_map(3, 3, [&](const CMat &x) { return CMat(u * x * u.adjoint()); });
    EXPECT_LT(max_abs(by_unitary.choi() - by_kraus.choi()), 1e-14);
    EXPECT_LT(max_abs(by_unitary.choi() - by_map.choi()), 1e-14);

    auto dephase = QuantumChannel::dephasing(2, 1.0);
    auto measure = QuantumChannel::basis_measurement(2);
    EXPECT_LT(max_abs(dephase.choi() - measure.choi()), 1e-14);
    auto mp = QuantumChannel::measure_prepare(Povm::computational_basis(2), {DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)});
    EXPECT_LT(max_abs(mp.choi() - measure.choi()), 1e-14);

    CMat bad = CMat::Identity(4, 4) / 2;
    EXPECT_THROW(QuantumChannel(bad, 2, 2), InvariantViolation);
    EXPECT_THROW(QuantumChannel(CMat::Identity(4, 4) / 4, 2, 3), DimensionMismatch);
}

TEST(quantum_core, trace_dual) {
    for (unsigned long long seed = 0; seed < 5; ++seed) {
        auto phi = QuantumChannel::random(2, 3, 2, seed);
        CMat x = test_util::random_density(2, seed + 10);
        CMat y = hermitian_part(test_util::random_density(3, seed + 20, 3) - CMat::Identity(3, 3) / 5);
        EXPECT_NEAR(std::abs((phi.apply(x) * y).trace() - (x * phi.apply_dual(y)).trace()), 0, 1e-13);
        EXPECT_LT(max_abs(trace_dual_apply(phi, HermitianOperator(CMat::Identity(3, 3))) - CMat::Identity(2, 2)), 1e-13);
    }
    CMat y = test_util::random_density(2, 3);
    EXPECT_LT(max_abs(trace_dual_apply(QuantumChannel::identity(2), HermitianOperator(y)) - y), 1e-14);
    EXPECT_LT(max_abs(trace_dual_apply(QuantumChannel::depolarizing(2, 0.3), HermitianOperator(pauli_z())) - 0.3 * pauli_z()), 1e-14);
}

TEST(quantum_core, bell_projectors) {
    for (Eigen::Index d : {2, 3}) {
        auto bell = bell_toolkit(d);
        ASSERT_EQ(bell.projectors.size(), static_cast<size_t>(d * d));
        CMat sum = CMat::Zero(d * d, d * d);
        for (size_t u = 0; u < bell.projectors.size(); ++u) {
            sum += bell.projectors[u];
            for (size_t v = 0; v < bell.projectors.size(); ++v) {
                EXPECT_NEAR((bell.projectors[u] * bell.projectors[v]).trace().real(), u == v ? 1 : 0, 1e-13);
            }
        }
        EXPECT_LT(max_abs(sum - CMat::Identity(d * d, d * d)), 1e-13);
    }
    // d = 2: the corrections are the Paulis I, Z, X, XZ in the order u = m d + n.
    auto bell = bell_toolkit(2);
    CMat xz = pauli_x() * pauli_z();
    std::vector<CMat> paulis{CMat::Identity(2, 2), pauli_z(), pauli_x(), xz};
    for (size_t u = 0; u < 4; ++u) {
        EXPECT_NEAR(std::abs((bell.corrections[u].adjoint() * paulis[u]).trace()), 2, 1e-13) << u;
    }
}

TEST(quantum_core, teleportation_identity) {
    // Sum_u W^u Tr_{B''B}[(phi+_{C B''} (x) X_B)(I_C (x) beta^u_{B''B})] W^u^dagger = X.
    for (Eigen::Index d : {2, 3}) {
        auto bell = bell_toolkit(d);
        auto dd = static_cast<size_t>(d);
        CMat phi = maximally_entangled(d).matrix();
        for (unsigned long long seed = 0; seed < 20; ++seed) {
            CMat x = test_util::random_density(d, seed + 100 * static_cast<unsigned long long>(d), 1 + seed % 2);
            CMat joint = kron(phi, x);
            CMat out = CMat::Zero(d, d);
            for (size_t u = 0; u < bell.projectors.size(); ++u) {
                CMat term = partial_trace(joint * kron(CMat::Identity(d, d), bell.projectors[u]), {dd, dd, dd}, {1, 2});
                out += bell.corrections[u] * term * bell.corrections[u].adjoint();
            }
            EXPECT_LT(max_abs(out - x), 1e-9);
        }
    }
}

TEST(quantum_core, ic_povm_and_dual_frame) {
    for (Eigen::Index d : {2, 3}) {
        auto ic = ic_povm_with_dual(d);
        ASSERT_EQ(ic.povm.size(), static_cast<size_t>(d * d));
        Eigen::MatrixXd gram(d * d, d * d);
        for (Eigen::Index a = 0; a < d * d; ++a) {
            for (Eigen::Index b = 0; b < d * d; ++b) {
                gram(a, b) = (ic.povm[static_cast<size_t>(a)] * ic.povm[static_cast<size_t>(b)]).trace().real();
            }
        }
        EXPECT_GT(Eigen::JacobiSVD<Eigen::MatrixXd>(gram).singularValues().minCoeff(), 1e-6);

        CMat zero = DensityOperator::basis(d, 0).matrix();
        EXPECT_LT(max_abs(ic.dual.reconstruct(ic.povm.probabilities(zero)) - zero), 1e-10);
        CMat id = CMat::Identity(d, d);
        EXPECT_LT(max_abs(ic.dual.reconstruct(ic.povm.probabilities(id)) - id), 1e-10);
        CMat rho = test_util::random_density(d, 5, 2);
        EXPECT_LT(max_abs(ic.dual.reconstruct(ic.povm.probabilities(rho)) - rho), 1e-10);
        for (const auto &xi : ic.dual.operators) {
            EXPECT_NEAR(xi.trace().real(), 1, 1e-10);
        }
    }
}

TEST(quantum_core, hermitian_tuple_shift) {
    std::vector<HermitianOperator> zeros(3, HermitianOperator(CMat::Zero(2, 2)));
    auto uniform = hermitian_tuple_to_povm(zeros);
    for (size_t u = 0; u < 3; ++u) {
        EXPECT_LT(max_abs(uniform.povm[u] - CMat::Identity(2, 2) / 3), 1e-12);
    }

    auto zz = hermitian_tuple_to_povm({HermitianOperator(pauli_z()), HermitianOperator(CMat(-pauli_z()))});
    EXPECT_NEAR(zz.alpha, 1 + 1e-6, 1e-12);
    CMat expected = (pauli_z() + zz.alpha * CMat::Identity(2, 2)) / (2 * zz.alpha);
    EXPECT_LT(max_abs(zz.povm[0] - expected), 1e-12);
    EXPECT_GE(min_eigenvalue(zz.povm[1]), 0);

    auto g = test_util::rng(3);
    std::vector<HermitianOperator> tuple;
    for (int u = 0; u < 4; ++u) {
        tuple.emplace_back(hermitian_part(test_util::ginibre(3, 3, g)));
    }
    auto shifted = hermitian_tuple_to_povm(tuple);
    auto back = shifted.recover_tuple();
    for (size_t u = 0; u < tuple.size(); ++u) {
        EXPECT_LT(max_abs(back[u] - tuple[u].matrix()), 1e-12);
        EXPECT_GE(min_eigenvalue(shifted.povm[u]), 0);
    }
}

TEST(quantum_core, value_type_validation) {
    EXPECT_THROW(DensityOperator(CMat::Identity(2, 2)), InvariantViolation);
    CMat neg = CMat::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityOperator{neg}, InvariantViolation);
    EXPECT_THROW(Povm({CMat::Identity(2, 2), CMat::Identity(2, 2)}), InvariantViolation);
    EXPECT_THROW(Povm({CMat::Identity(2, 2), CMat::Zero(3, 3)}), DimensionMismatch);
    CMat nonherm = CMat::Zero(2, 2);
    nonherm(0, 1) = 1;
    EXPECT_THROW(HermitianOperator{nonherm}, InvariantViolation);
    auto rho = random_state(3, 5, 2);
    EXPECT_NEAR(rho.matrix().trace().real(), 1, 1e-12);
    EXPECT_EQ(rho.matrix(), random_state(3, 5, 2).matrix());
}
