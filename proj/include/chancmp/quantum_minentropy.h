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

#ifndef CHANCMP_QUANTUM_MINENTROPY_H
#define CHANCMP_QUANTUM_MINENTROPY_H

#include <optional>
#include <vector>

#include "chancmp/quantum_core.h"

namespace chancmp {

/// A classical-quantum ensemble {p(u); rho^u}.
class CqEnsemble {
   public:
    CqEnsemble(Eigen::VectorXd weights, std::vector<DensityOperator> states);

    /// Builds an ensemble from the unnormalized operators A_u = p(u) rho^u. Zero-weight entries get
    /// the maximally mixed state.
    static CqEnsemble from_weighted(const std::vector<CMat> &weighted);

    const Eigen::VectorXd &weights() const {
        return weights_;
    }
    const std::vector<DensityOperator> &states() const {
        return states_;
    }
    size_t size() const {
        return states_.size();
    }
    Eigen::Index dim() const {
        return states_.front().dim();
    }
    /// p(u) rho^u
    CMat weighted(size_t u) const;
    std::vector<CMat> weighted() const;
    /// sum_u p(u) rho^u
    CMat average() const;

   private:
    Eigen::VectorXd weights_;
    std::vector<DensityOperator> states_;
};

/// Sends every state of the ensemble through the channel.
CqEnsemble push_ensemble(const CqEnsemble &e, const QuantumChannel &phi);

/// sum_u Tr[P^u p(u) rho^u]
double success_probability(const CqEnsemble &e, const Povm &povm);

struct GuessResult {
    double value = 0;
    Povm povm;
};

/// 1/2 + 1/2 |p0 rho0 - p1 rho1|_1, with the projective measurement onto the positive part.
GuessResult helstrom(double p0, const DensityOperator &rho0, double p1, const DensityOperator &rho1);

/// Same, for unnormalized operators A_0 = p0 rho0 and A_1 = p1 rho1.
GuessResult helstrom_weighted(const CMat &a0, const CMat &a1);

/// Pretty-good measurement S^{-1/2} A_u S^{-1/2}, with the kernel of S shared evenly.
GuessResult pgm_lower_bound(const CqEnsemble &e);

enum class BracketMethod { Trivial, Helstrom, Commuting, Iterative };

struct PguessBracket {
    double lower = 0;
    double upper = 1;
    /// Achieves `lower`.
    Povm povm;
    BracketMethod method = BracketMethod::Iterative;
    /// upper - lower <= tol; otherwise the bracket is still sound but loose.
    bool converged = false;
    int iterations = 0;

    double gap() const {
        return upper - lower;
    }
};

/// Sound bracket on P_guess(U|A). Binary ensembles use the Helstrom formula and commuting ensembles
/// the classical formula, both exact; otherwise the best of the pretty-good measurement and a
/// fixed-point refinement gives the lower end, and the shifted dual certificate
/// Y = Herm(sum_u A_u P^u) + eps I gives the upper end.
PguessBracket pguess_bracket(const CqEnsemble &e, double tol = 1e-9);

struct MinEntropyBracket {
    double lower = 0;
    double upper = 0;
    bool converged = false;
};

/// -log2 of the guessing bracket, endpoints swapped.
MinEntropyBracket min_entropy_cq(const CqEnsemble &e, double tol = 1e-9);

/// The ensemble p(u) omega^u = Tr_R[phi+ (E^u (x) I)] = (E^u)^T / d steered by a POVM on R; its
/// average is I/d.
CqEnsemble ensemble_from_povm(const Povm &povm);

/// ensemble_from_povm of a random POVM with Ginibre elements reshaped to sum to the identity.
CqEnsemble random_ensemble_maxmixed(Eigen::Index d, size_t n_outcomes, unsigned long long seed);

/// True when every pair of operators commutes within tol.
bool operators_commute(const std::vector<CMat> &ops, double tol = 1e-10);

}  // namespace chancmp

#endif
