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

#ifndef CHANCMP_PROBABILITY_H
#define CHANCMP_PROBABILITY_H

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

namespace chancmp {

/// Absolute tolerance used by every normalization and positivity check on classical probabilities.
inline constexpr double kProbabilityTolerance = 1e-12;

/// Ordered list of symbol labels. Indices into matrices follow label order.
using Alphabet = std::vector<std::string>;

/// Labels "0", "1", ..., "n-1".
Alphabet default_alphabet(size_t n);

/// A probability distribution over a finite, nonempty alphabet.
class Distribution {
   public:
    explicit Distribution(Eigen::VectorXd probs);
    Distribution(Eigen::VectorXd probs, Alphabet labels);

    static Distribution uniform(size_t n);

    const Eigen::VectorXd &probs() const {
        return probs_;
    }
    const Alphabet &labels() const {
        return labels_;
    }
    size_t size() const {
        return static_cast<size_t>(probs_.size());
    }
    double operator[](size_t i) const {
        return probs_(static_cast<Eigen::Index>(i));
    }

   private:
    Eigen::VectorXd probs_;
    Alphabet labels_;
};

/// A joint distribution p(s, u) of an observed signal S (rows) and a message U (columns).
///
/// Every comparison in the library treats the row variable as what the decoder sees and the
/// column variable as what it tries to guess.
class JointDistribution {
   public:
    explicit JointDistribution(Eigen::MatrixXd probs);
    JointDistribution(Eigen::MatrixXd probs, Alphabet signal_labels, Alphabet message_labels);

    /// Uniform distribution on the diagonal: signal and message perfectly correlated.
    static JointDistribution perfectly_correlated(size_t n);
    static JointDistribution product(const Distribution &signal, const Distribution &message);

    const Eigen::MatrixXd &probs() const {
        return probs_;
    }
    const Alphabet &signal_labels() const {
        return signal_labels_;
    }
    const Alphabet &message_labels() const {
        return message_labels_;
    }
    size_t num_signals() const {
        return static_cast<size_t>(probs_.rows());
    }
    size_t num_messages() const {
        return static_cast<size_t>(probs_.cols());
    }

    Distribution signal_marginal() const;
    Distribution message_marginal() const;

   private:
    Eigen::MatrixXd probs_;
    Alphabet signal_labels_;
    Alphabet message_labels_;
};

/// A noisy channel w(y|x), stored as a column-stochastic matrix indexed (output y, input x).
class ClassicalChannel {
   public:
    explicit ClassicalChannel(Eigen::MatrixXd matrix);
    ClassicalChannel(Eigen::MatrixXd matrix, Alphabet inputs, Alphabet outputs);

    /// Builds a channel from a matrix that is stochastic up to rounding noise: entries above
    /// -1e-9 are clipped to zero and every column is renormalized.
    static ClassicalChannel from_approximate(const Eigen::MatrixXd &matrix, Alphabet inputs, Alphabet outputs);

    static ClassicalChannel identity(size_t n);
    /// Sends every input to output `target`.
    static ClassicalChannel constant(size_t num_inputs, size_t num_outputs, size_t target = 0);
    /// Binary symmetric channel with crossover probability p.
    static ClassicalChannel binary_symmetric(double p);
    /// Binary erasure channel with erasure probability e; outputs are labeled {0, e, 1}.
    static ClassicalChannel binary_erasure(double e);

    const Eigen::MatrixXd &matrix() const {
        return matrix_;
    }
    const Alphabet &inputs() const {
        return inputs_;
    }
    const Alphabet &outputs() const {
        return outputs_;
    }
    size_t num_inputs() const {
        return static_cast<size_t>(matrix_.cols());
    }
    size_t num_outputs() const {
        return static_cast<size_t>(matrix_.rows());
    }
    double operator()(size_t y, size_t x) const {
        return matrix_(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
    }

   private:
    Eigen::MatrixXd matrix_;
    Alphabet inputs_;
    Alphabet outputs_;
};

/// H(X) in bits, with 0 log 0 = 0.
double shannon_entropy(const Distribution &d);

/// H(U|S) = H(SU) - H(S) for a joint p(s, u).
double conditional_entropy(const JointDistribution &j);

/// I(S;U) = H(S) + H(U) - H(SU).
double mutual_information(const JointDistribution &j);

/// Ideal-observer success probability sum_s max_u p(s, u).
double guessing_probability(const JointDistribution &j);

/// The ideal-observer decoder: for each signal, the most likely message (lowest index on ties).
std::vector<size_t> optimal_decoder(const JointDistribution &j);

/// H_min(U|S) = -log2 P_guess(U|S).
double conditional_min_entropy(const JointDistribution &j);

/// Sends the signal of p(x, u) through w, giving p(y, u) = sum_x w(y|x) p(x, u).
JointDistribution push_through_channel(const JointDistribution &j, const ClassicalChannel &w);

/// The channel (w2 o w1)(z|x) = sum_y w2(z|y) w1(y|x).
ClassicalChannel compose(const ClassicalChannel &w2, const ClassicalChannel &w1);

}  // namespace chancmp

#endif
