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

#ifndef CHANCMP_CLASSICAL_COMPARISON_H
#define CHANCMP_CLASSICAL_COMPARISON_H

#include <optional>
#include <variant>

#include "chancmp/probability.h"

namespace chancmp {

/// Decision threshold shared by the certificate and witness programs.
inline constexpr double kDegradabilityTolerance = 1e-9;

/// A channel phi: Y -> Z with w' ~= phi o w.
struct DegradingCertificate {
    ClassicalChannel phi;
    /// max_{z,x} |w'(z|x) - (phi o w)(z|x)|, recomputed from `phi`.
    double residual = 0;
};

/// An ensemble p(x, z') with message alphabet Z' = Z on which decoding the output of w' with the
/// identity decoder beats the optimal decoder on the output of w by `gap`.
struct ViolationWitness {
    JointDistribution p_star;
    double gap = 0;
};

/// Probabilities of guessing the witness message from each channel output.
struct WitnessEvaluation {
    /// sum_{z',x} w'(z'|x) p(x, z'): guess z' = z on the output of w'.
    double identity_decoder_success = 0;
    /// P_guess(U|Y) on the output of w with the ideal-observer decoder.
    double optimal_success = 0;
    /// P_guess(U|Z) on the output of w' with the ideal-observer decoder (>= identity decoder).
    double degraded_side_success = 0;

    double gap() const {
        return identity_decoder_success - optimal_success;
    }
};

struct WitnessResult {
    /// Optimum of max_p [sum w'(z'|x)p(x,z') - sum_y max_z' sum_x w(y|x)p(x,z')].
    double gap = 0;
    /// Present only when gap > kDegradabilityTolerance.
    std::optional<ViolationWitness> witness;
};

struct ComparisonVerdict {
    std::variant<DegradingCertificate, ViolationWitness> outcome;
    /// Optimum of min_phi max_{z,x} |w' - phi o w|.
    double residual = 0;
    /// Optimum of min_phi max_{z,x} (w' - phi o w).
    double one_sided_residual = 0;
    /// Optimum of the witness program; equals one_sided_residual by the minimax theorem.
    double gap = 0;

    bool degradable() const {
        return std::holds_alternative<DegradingCertificate>(outcome);
    }
};

/// Best degrading channel in the max-norm sense, from a linear program.
DegradingCertificate find_degrading_channel(const ClassicalChannel &w, const ClassicalChannel &w_prime);

/// min over channels phi of max_{z,x} [w'(z|x) - (phi o w)(z|x)], from a linear program.
double one_sided_residual(const ClassicalChannel &w, const ClassicalChannel &w_prime);

/// The ensemble maximizing the min-entropy violation, from the witness linear program.
WitnessResult extract_violation_witness(const ClassicalChannel &w, const ClassicalChannel &w_prime);

/// Recomputes the guessing probabilities of a witness from the raw distributions.
WitnessEvaluation evaluate_witness(const ClassicalChannel &w, const ClassicalChannel &w_prime, const JointDistribution &p_star);

/// Decides whether w can be degraded into w'. Throws AmbiguousVerdict when the two programs land
/// in the band (tol, 10 tol) or contradict each other.
ComparisonVerdict compare_channels(
    const ClassicalChannel &w, const ClassicalChannel &w_prime, double tol = kDegradabilityTolerance);

struct DpiReport {
    int trials = 0;
    /// min over trials of H_min(U|Z) - H_min(U|Y), with Z the output of phi applied to Y.
    double min_slack = 0;
    /// Trials with slack below -1e-10.
    int violations = 0;
};

/// Samples random ensembles p(x, u) and checks that post-processing the output of w by phi never
/// lowers the conditional min-entropy. Trial t uses seed + t.
DpiReport verify_dpi_on_samples(const ClassicalChannel &w, const ClassicalChannel &phi, int n_trials, unsigned long long seed);

/// Column-stochastic matrix with Dirichlet(1) columns; deterministic per seed.
ClassicalChannel random_channel(size_t n_in, size_t n_out, unsigned long long seed);

/// Dirichlet(concentration) joint distribution over (signal, message).
JointDistribution random_joint(size_t n_signal, size_t n_message, unsigned long long seed, double concentration = 1.0);

struct LessNoisySearch {
    /// Largest H(U|Y) - H(U|Z) found; positive means w is not less noisy than w'.
    double best_violation = 0;
    std::optional<JointDistribution> best_probe;
};

/// Heuristic search for probes with H(U|Y) > H(U|Z): random restarts followed by a stochastic
/// local ascent over p(x, u). A nonpositive result proves nothing.
LessNoisySearch search_less_noisy_violation(
    const ClassicalChannel &w, const ClassicalChannel &w_prime, int restarts, int steps, unsigned long long seed);

}  // namespace chancmp

#endif
