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

#ifndef CHANCMP_QUANTUM_CORE_H
#define CHANCMP_QUANTUM_CORE_H

#include <functional>
#include <vector>

#include "chancmp/linalg.h"

namespace chancmp {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPovmTolerance = 1e-9;
inline constexpr double kChannelTolerance = 1e-9;

/// A complex square matrix equal to its adjoint within 1e-12.
class HermitianOperator {
   public:
    explicit HermitianOperator(CMat m);

    const CMat &matrix() const {
        return m_;
    }
    Eigen::Index dim() const {
        return m_.rows();
    }

   private:
    CMat m_;
};

/// Hermitian, eigenvalues >= -1e-10, unit trace within 1e-10.
class DensityOperator {
   public:
    explicit DensityOperator(CMat m);

    static DensityOperator maximally_mixed(Eigen::Index d);
    static DensityOperator pure(const CVec &psi);
    /// |k><k|
    static DensityOperator basis(Eigen::Index d, Eigen::Index k);

    const CMat &matrix() const {
        return m_;
    }
    Eigen::Index dim() const {
        return m_.rows();
    }

   private:
    CMat m_;
};

/// PSD elements (within -1e-10) summing to the identity within 1e-9.
class Povm {
   public:
    explicit Povm(std::vector<CMat> elements);

    /// Projective measurement in the computational basis.
    static Povm computational_basis(Eigen::Index d);

    const std::vector<CMat> &elements() const {
        return elements_;
    }
    const CMat &operator[](size_t u) const {
        return elements_[u];
    }
    size_t size() const {
        return elements_.size();
    }
    Eigen::Index dim() const {
        return elements_.front().rows();
    }
    /// Tr[E^u rho] for every outcome.
    Eigen::VectorXd probabilities(const CMat &rho) const;

   private:
    std::vector<CMat> elements_;
};

/// A CPTP map from d_in x d_in to d_out x d_out matrices, stored by its trace-1 Choi operator
/// chi = (id_R (x) Phi)(phi+) on R (x) out, R the first factor. Entry ((i, a), (j, b)) sits at
/// (i d_out + a, j d_out + b).
class QuantumChannel {
   public:
    /// Validates PSD (within -1e-10) and Tr_out chi = I / d_in (within 1e-9).
    QuantumChannel(CMat choi, Eigen::Index d_in, Eigen::Index d_out);

    /// Builds the Choi operator of any linear map and validates it.
    static QuantumChannel from_map(Eigen::Index d_in, Eigen::Index d_out, const std::function<CMat(const CMat &)> &map);
    static QuantumChannel from_kraus(const std::vector<CMat> &kraus);
    static QuantumChannel identity(Eigen::Index d);
    /// Lambda_t(X) = t X + (1 - t) Tr[X] I / d; completely positive iff t in [-1/(d^2 - 1), 1].
    static QuantumChannel depolarizing(Eigen::Index d, double t);
    /// Damps off-diagonal entries by (1 - strength); strength 1 is complete dephasing.
    static QuantumChannel dephasing(Eigen::Index d, double strength = 1.0);
    /// X -> Tr[X] sigma.
    static QuantumChannel constant(Eigen::Index d_in, const DensityOperator &sigma);
    static QuantumChannel unitary(const CMat &u);
    /// X -> sum_u Tr[E^u X] sigma^u.
    static QuantumChannel measure_prepare(const Povm &povm, const std::vector<DensityOperator> &states);
    /// Measures in the computational basis and records the outcome as |u><u|.
    static QuantumChannel basis_measurement(Eigen::Index d);
    /// Random Stinespring isometry with Gaussian entries; deterministic per seed.
    static QuantumChannel random(Eigen::Index d_in, Eigen::Index d_out, Eigen::Index kraus_rank, unsigned long long seed);

    const CMat &choi() const {
        return choi_;
    }
    Eigen::Index d_in() const {
        return d_in_;
    }
    Eigen::Index d_out() const {
        return d_out_;
    }

    /// The map on arbitrary d_in x d_in matrices.
    CMat apply(const CMat &x) const;
    /// The trace dual: Tr[X Phi^dagger(Y)] = Tr[Phi(X) Y].
    CMat apply_dual(const CMat &y) const;

   private:
    CMat choi_;
    Eigen::Index d_in_;
    Eigen::Index d_out_;
};

/// Choi operator (trace-1 convention) of a linear map, without validation.
CMat choi_of_map(Eigen::Index d_in, Eigen::Index d_out, const std::function<CMat(const CMat &)> &map);

/// Applies the map encoded by an arbitrary (not necessarily valid) Choi operator.
CMat apply_choi(const CMat &choi, Eigen::Index d_in, Eigen::Index d_out, const CMat &x);

DensityOperator apply_channel(const QuantumChannel &phi, const DensityOperator &rho);

/// psi o phi
QuantumChannel compose_quantum(const QuantumChannel &psi, const QuantumChannel &phi);

/// id_aux (x) Phi acting on aux (x) in.
QuantumChannel extend_with_identity(const QuantumChannel &phi, Eigen::Index d_aux);

/// (id_aux (x) Phi)(X) for X on aux (x) in, computed blockwise without forming the larger Choi operator.
CMat apply_extended(const QuantumChannel &phi, Eigen::Index d_aux, const CMat &x);

/// (id_aux (x) Phi)^dagger(Y) for Y on aux (x) out.
CMat apply_extended_dual(const QuantumChannel &phi, Eigen::Index d_aux, const CMat &y);

CMat trace_dual_apply(const QuantumChannel &phi, const HermitianOperator &y);

/// Projector onto (1/sqrt d) sum_k |k>|k>.
DensityOperator maximally_entangled(Eigen::Index d);

struct BellToolkit {
    Eigen::Index d = 0;
    /// beta^u = (I (x) U_u) phi+ (I (x) U_u)^dagger with U_u = X^m Z^n, u = m d + n.
    Povm projectors;
    /// W^u = U_u, undoing the Bell outcome u in teleportation.
    std::vector<CMat> corrections;
};

BellToolkit bell_toolkit(Eigen::Index d);

/// Generalized Pauli shift X|k> = |k+1> and clock Z|k> = w^k |k>.
CMat weyl_shift(Eigen::Index d);
CMat weyl_clock(Eigen::Index d);

struct DualFrame {
    std::vector<CMat> operators;

    /// sum_y Tr[Q^y X] Xi^y
    CMat reconstruct(const Eigen::VectorXd &probabilities) const;
};

struct InformationallyComplete {
    Povm povm;
    DualFrame dual;
};

/// d^2-outcome IC-POVM with its (unique) dual frame: the tetrahedral SIC for d = 2; for larger d the
/// projectors onto |k>, (|k> + |l>)/sqrt2, (|k> + i|l>)/sqrt2 reshaped to sum to the identity.
InformationallyComplete ic_povm_with_dual(Eigen::Index d);

struct ShiftedPovm {
    Povm povm;
    double alpha = 0;
    /// Sum of the input tuple.
    CMat sigma;

    /// Inverts E^u = (O^u + alpha I - Sigma/n) / (alpha n).
    std::vector<CMat> recover_tuple() const;
};

/// E^u = (O^u + alpha I - Sigma/n) / (alpha n), with alpha the smallest value making every element PSD
/// plus a margin of 1e-6.
ShiftedPovm hermitian_tuple_to_povm(const std::vector<HermitianOperator> &tuple);

CMat random_unitary(Eigen::Index d, unsigned long long seed);
/// Haar-random pure state when rank = 1, otherwise a Ginibre mixed state of that rank.
DensityOperator random_state(Eigen::Index d, unsigned long long seed, Eigen::Index rank = 1);

}  // namespace chancmp

#endif
