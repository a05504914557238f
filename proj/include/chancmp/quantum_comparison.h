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

#ifndef CHANCMP_QUANTUM_COMPARISON_H
#define CHANCMP_QUANTUM_COMPARISON_H

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chancmp/dykstra.h"
#include "chancmp/quantum_core.h"
#include "chancmp/quantum_minentropy.h"

namespace chancmp {

struct FeasibilityOptions {
    /// Feasible iff the residual of the final POVM is at most this.
    double tolerance = 1e-7;
    int max_iterations = 20000;
    int stall_window = 500;
};

/// POVMs {Q^u} on the output of Phi' and {P^u} on the output of Phi with Phi^dagger(P^u) close to
/// Phi'^dagger(Q^u) for every u.
struct PovmCorrespondence {
    Povm q;
    Povm p;
    /// max_u |Phi'^dagger(Q^u) - Phi^dagger(P^u)|_op
    double residual = 0;
    int iterations = 0;
};

struct InfeasibleCorrespondence {
    double residual = 0;
    /// r^u = Phi'^dagger(Q^u) - Phi^dagger(P^u) at the final iterate, on the input space.
    std::vector<CMat> violation_direction;
    /// The solver ran out of iterations rather than stalling.
    bool iteration_limit = false;
    int iterations = 0;
};

using FeasibilityResult = std::variant<PovmCorrespondence, InfeasibleCorrespondence>;

/// max_u |Phi'^dagger(Q^u) - Phi^dagger(P^u)|_op
double correspondence_residual(const QuantumChannel &phi, const QuantumChannel &phi_prime, const Povm &q, const Povm &p);

/// Searches for {P^u} by Dykstra's alternating projections between the PSD cone and the affine set
/// {sum_u P^u = I, Phi^dagger(P^u) = Phi'^dagger(Q^u)}. The last PSD iterate is reshaped by
/// S^{-1/2} . S^{-1/2}, S = sum_u P^u, into an exact POVM before scoring.
FeasibilityResult povm_feasibility(
    const QuantumChannel &phi, const QuantumChannel &phi_prime, const Povm &q, const FeasibilityOptions &options = {});

enum class SufficiencyVerdict { NoViolationFound, ViolationFound };

struct SufficiencyReport {
    SufficiencyVerdict verdict = SufficiencyVerdict::NoViolationFound;
    /// min over probes of P_guess(Phi side) - P_guess(Phi' side).
    double worst_slack = 0;
    int probes = 0;
    /// Description of the worst probe.
    std::string worst_probe;
};

/// Compares guessing probabilities on id (x) Phi and id (x) Phi' (auxiliary dimension = output
/// dimension of Phi') for separable probe ensembles with maximally mixed average: binary ensembles
/// steered by product effects F (x) G, and product basis ensembles when their outputs commute. Only
/// exactly evaluable probes are used.
SufficiencyReport test_sufficiency(
    const QuantumChannel &phi, const QuantumChannel &phi_prime, int n_trials, unsigned long long seed);

/// One PSD product term weight * (aux (x) sys) of a separable operator; aux and sys have unit trace.
struct ProductTerm {
    double weight = 0;
    CMat aux;
    CMat sys;
};

/// A binary ensemble {p0 rho0, p1 rho1} on aux (x) A with separable states, on which Phi' beats Phi.
struct QuantumViolationWitness {
    Eigen::Index d_aux = 1;
    /// p0 rho0 = sum of positive_terms, p1 rho1 = sum of negative_terms.
    std::vector<ProductTerm> positive_terms;
    std::vector<ProductTerm> negative_terms;
    CqEnsemble ensemble;
    /// P_guess through id (x) Phi' minus P_guess through id (x) Phi, both by the Helstrom formula.
    double gap = 0;
    double phi_side_pguess = 0;
    double phi_prime_side_pguess = 0;
    /// Optimal measurements on the two output sides.
    Povm phi_decoder;
    Povm phi_prime_decoder;
};

struct WitnessCheck {
    double phi_side_pguess = 0;
    double phi_prime_side_pguess = 0;
    double gap = 0;
    /// Largest deviation between the product terms and the ensemble operators.
    double decomposition_error = 0;
};

/// Recomputes a witness from its product terms with the Helstrom formula on both sides.
WitnessCheck reevaluate_witness(const QuantumChannel &phi, const QuantumChannel &phi_prime, const QuantumViolationWitness &w);

/// Splits a Hermitian operator on aux (x) sys into positive and negative sums of PSD product terms,
/// keeping the cheaper of an operator-Schmidt split and an informationally complete frame
/// expansion. The total weight of both sums is at least the trace norm.
std::pair<std::vector<ProductTerm>, std::vector<ProductTerm>> separable_split(
    const CMat &delta, Eigen::Index d_aux, Eigen::Index d_sys);

/// Converts a violation direction {r^u} on aux (x) A into a separable binary witness. Candidates:
/// binary coarse-grainings of the ensemble (E^u)^T / D steered by E = hermitian_tuple_to_povm({(r^u)^T}),
/// structured product probes, and a subgradient ascent of |Phi'(Delta)|_1 - |Phi(Delta)|_1. Returns
/// nullopt when no candidate reaches a gap above 1e-6.
std::optional<QuantumViolationWitness> extract_quantum_violation(
    const QuantumChannel &phi,
    const QuantumChannel &phi_prime,
    Eigen::Index d_aux,
    const std::vector<CMat> &direction);

struct QuantumDegradingCertificate {
    QuantumChannel psi;
    /// |Choi(psi o Phi) - Choi(Phi')|_F
    double residual = 0;
    /// Residual of the POVM correspondence behind psi.
    double correspondence_residual = 0;
    /// Residual of the independent Choi-space feasibility run, when performed.
    std::optional<double> choi_path_residual;
};

using QuantumVerdict = std::variant<QuantumDegradingCertificate, QuantumViolationWitness>;

/// |Choi(psi o phi) - Choi(phi')|_F
double degrading_residual(const QuantumChannel &psi, const QuantumChannel &phi, const QuantumChannel &phi_prime);

/// Builds psi(X) = sum_u W^u Tr_{B''B}[(phi+ (x) X)(I (x) P^u)] W^u^dagger from a POVM on B'' (x) B
/// indexed like the Bell projectors of dimension d_out.
QuantumChannel teleportation_channel(const Povm &p, Eigen::Index d_in, Eigen::Index d_out);

struct ChoiFeasibility {
    bool feasible = false;
    double residual = 0;
    std::optional<QuantumChannel> psi;
    int iterations = 0;
};

/// Dykstra directly on Choi(psi): PSD, Tr_out = I/d, and Choi(psi o Phi) = Choi(Phi').
ChoiFeasibility choi_space_feasibility(const QuantumChannel &phi, const QuantumChannel &phi_prime, const FeasibilityOptions &options = {});

/// Decides whether Phi' = Psi o Phi for some channel Psi. The feasibility run on id (x) Phi versus
/// id (x) Phi' against the Bell projectors yields Psi by teleportation; an independent Choi-space run
/// must agree. An infeasible verdict is only returned with a witness. Throws AmbiguousVerdict when
/// the two runs disagree or no witness corroborates infeasibility.
QuantumVerdict find_degrading_quantum(const QuantumChannel &phi, const QuantumChannel &phi_prime);

/// Returns a common eigenbasis (columns) of the range of the channel, or throws NotClassicalOutput.
CMat classical_output_basis(const QuantumChannel &phi_prime, double tol = 1e-9);

/// Degrading channel of measure-and-prepare form psi(.) = sum_u Tr[P^u .] |u><u| for a channel
/// whose output is classical in the basis {|u>}.
QuantumVerdict semiclassical_degrading(const QuantumChannel &phi, const QuantumChannel &phi_prime);

/// A Hermiticity-preserving linear map Gamma(X) = sum_y Tr[P^y X] Xi^y with Gamma o Phi = Phi'.
struct StatisticalMorphism {
    Eigen::Index d_in = 0;
    Eigen::Index d_out = 0;
    /// Matrix of Gamma in the real Hermitian coordinates of hermitian_to_real.
    Eigen::MatrixXd matrix;
    std::vector<CMat> p;
    std::vector<CMat> dual;
    double correspondence_residual = 0;

    CMat apply(const CMat &x) const;
};

struct MorphismChecks {
    double hermiticity_error = 0;
    double trace_error = 0;
    /// max over matrix units E_ij of |Gamma(Phi(E_ij)) - Phi'(E_ij)|
    double composition_error = 0;
    /// Smallest eigenvalue of Gamma(Phi(rho)) over the sampled states.
    double min_range_eigenvalue = 0;
};

/// Builds Gamma from an informationally complete POVM on the output of Phi' and its dual frame.
/// Throws InvariantViolation when the correspondence is infeasible.
StatisticalMorphism build_statistical_morphism(const QuantumChannel &phi, const QuantumChannel &phi_prime);

MorphismChecks check_statistical_morphism(
    const StatisticalMorphism &gamma,
    const QuantumChannel &phi,
    const QuantumChannel &phi_prime,
    int n_samples,
    unsigned long long seed);

}  // namespace chancmp

#endif
