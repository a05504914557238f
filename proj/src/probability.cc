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

#include "chancmp/probability.h"

#include <cmath>
#include <sstream>

#include "chancmp/errors.h"

using namespace chancmp;

namespace {

void check_entries(const Eigen::MatrixXd &m, const char *what) {
    if (m.size() == 0) {
        throw InvariantViolation(std::string(what) + ": empty alphabet");
    }
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        double v = m.data()[i];
        if (!std::isfinite(v) || v < -kProbabilityTolerance) {
            std::stringstream ss;
            ss << what << ": entry " << v << " is not a probability";
            throw InvariantViolation(ss.str());
        }
    }
}

void check_mass(double total, const char *what) {
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
        std::stringstream ss;
        ss.precision(17);
        ss << what << ": total mass " << total << " differs from 1";
        throw InvariantViolation(ss.str());
    }
}

void check_labels(const Alphabet &labels, Eigen::Index n, const char *what) {
    if (static_cast<Eigen::Index>(labels.size()) != n) {
        throw DimensionMismatch(std::string(what) + ": label count does not match size");
    }
}

double plogp_sum(const double *p, Eigen::Index n) {
    double h = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (p[i] > 0) {
            h -= p[i] * std::log2(p[i]);
        }
    }
    return h;
}

}  // namespace

Alphabet chancmp::default_alphabet(size_t n) {
    Alphabet a;
    a.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        a.push_back(std::to_string(i));
    }
    return a;
}

Distribution::Distribution(Eigen::VectorXd probs)
    : Distribution(probs, default_alphabet(static_cast<size_t>(probs.size()))) {
}

Distribution::Distribution(Eigen::VectorXd probs, Alphabet labels) : probs_(std::move(probs)), labels_(std::move(labels)) {
    check_entries(probs_, "Distribution");
    check_mass(probs_.sum(), "Distribution");
    check_labels(labels_, probs_.size(), "Distribution");
}

Distribution Distribution::uniform(size_t n) {
    return Distribution(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)));
}

JointDistribution::JointDistribution(Eigen::MatrixXd probs)
    : JointDistribution(
          probs, default_alphabet(static_cast<size_t>(probs.rows())), default_alphabet(static_cast<size_t>(probs.cols()))) {
}

JointDistribution::JointDistribution(Eigen::MatrixXd probs, Alphabet signal_labels, Alphabet message_labels)
    : probs_(std::move(probs)), signal_labels_(std::move(signal_labels)), message_labels_(std::move(message_labels)) {
    check_entries(probs_, "JointDistribution");
    check_mass(probs_.sum(), "JointDistribution");
    check_labels(signal_labels_, probs_.rows(), "JointDistribution signals");
    check_labels(message_labels_, probs_.cols(), "JointDistribution messages");
}

JointDistribution JointDistribution::perfectly_correlated(size_t n) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    return JointDistribution(p / static_cast<double>(n));
}

JointDistribution JointDistribution::product(const Distribution &signal, const Distribution &message) {
    return JointDistribution(signal.probs() * message.probs().transpose(), signal.labels(), message.labels());
}

Distribution JointDistribution::signal_marginal() const {
    Eigen::VectorXd m = probs_.rowwise().sum();
    m /= m.sum();
    return Distribution(m, signal_labels_);
}

Distribution JointDistribution::message_marginal() const {
    Eigen::VectorXd m = probs_.colwise().sum().transpose();
    m /= m.sum();
    return Distribution(m, message_labels_);
}

ClassicalChannel::ClassicalChannel(Eigen::MatrixXd matrix)
    : ClassicalChannel(
          matrix, default_alphabet(static_cast<size_t>(matrix.cols())), default_alphabet(static_cast<size_t>(matrix.rows()))) {
}

ClassicalChannel::ClassicalChannel(Eigen::MatrixXd matrix, Alphabet inputs, Alphabet outputs)
    : matrix_(std::move(matrix)), inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    check_entries(matrix_, "ClassicalChannel");
    for (Eigen::Index x = 0; x < matrix_.cols(); ++x) {
        check_mass(matrix_.col(x).sum(), "ClassicalChannel column");
    }
    check_labels(inputs_, matrix_.cols(), "ClassicalChannel inputs");
    check_labels(outputs_, matrix_.rows(), "ClassicalChannel outputs");
}

ClassicalChannel ClassicalChannel::from_approximate(const Eigen::MatrixXd &matrix, Alphabet inputs, Alphabet outputs) {
    Eigen::MatrixXd m = matrix;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        double &v = m.data()[i];
        if (v < -1e-9) {
            throw InvariantViolation("ClassicalChannel::from_approximate: entry too negative to be rounding noise");
        }
        v = std::max(v, 0.0);
    }
    for (Eigen::Index x = 0; x < m.cols(); ++x) {
        double s = m.col(x).sum();
        if (!(s > 0)) {
            throw InvariantViolation("ClassicalChannel::from_approximate: zero column");
        }
        m.col(x) /= s;
    }
    return ClassicalChannel(m, std::move(inputs), std::move(outputs));
}

ClassicalChannel ClassicalChannel::identity(size_t n) {
    auto k = static_cast<Eigen::Index>(n);
    return ClassicalChannel(Eigen::MatrixXd::Identity(k, k));
}

ClassicalChannel ClassicalChannel::constant(size_t num_inputs, size_t num_outputs, size_t target) {
    if (target >= num_outputs) {
        throw std::invalid_argument("ClassicalChannel::constant: target out of range");
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(num_outputs), static_cast<Eigen::Index>(num_inputs));
    m.row(static_cast<Eigen::Index>(target)).setOnes();
    return ClassicalChannel(m);
}

ClassicalChannel ClassicalChannel::binary_symmetric(double p) {
    Eigen::MatrixXd m(2, 2);
    m << 1 - p, p, p, 1 - p;
    return ClassicalChannel(m);
}

ClassicalChannel ClassicalChannel::binary_erasure(double e) {
    Eigen::MatrixXd m(3, 2);
    m << 1 - e, 0, e, e, 0, 1 - e;
    return ClassicalChannel(m, {"0", "1"}, {"0", "e", "1"});
}

double chancmp::shannon_entropy(const Distribution &d) {
    return plogp_sum(d.probs().data(), d.probs().size());
}

double chancmp::conditional_entropy(const JointDistribution &j) {
    double h_joint = plogp_sum(j.probs().data(), j.probs().size());
    Eigen::VectorXd s = j.probs().rowwise().sum();
    return std::max(0.0, h_joint - plogp_sum(s.data(), s.size()));
}

double chancmp::mutual_information(const JointDistribution &j) {
    Eigen::VectorXd s = j.probs().rowwise().sum();
    Eigen::VectorXd u = j.probs().colwise().sum().transpose();
    double h_joint = plogp_sum(j.probs().data(), j.probs().size());
    return std::max(0.0, plogp_sum(s.data(), s.size()) + plogp_sum(u.data(), u.size()) - h_joint);
}

std::vector<size_t> chancmp::optimal_decoder(const JointDistribution &j) {
    std::vector<size_t> guess(j.num_signals());
    for (Eigen::Index s = 0; s < j.probs().rows(); ++s) {
        Eigen::Index best = 0;
        for (Eigen::Index u = 1; u < j.probs().cols(); ++u) {
            if (j.probs()(s, u) > j.probs()(s, best)) {
                best = u;
            }
        }
        guess[static_cast<size_t>(s)] = static_cast<size_t>(best);
    }
    return guess;
}

double chancmp::guessing_probability(const JointDistribution &j) {
    return j.probs().rowwise().maxCoeff().sum();
}

double chancmp::conditional_min_entropy(const JointDistribution &j) {
    return std::max(0.0, -std::log2(guessing_probability(j)));
}

JointDistribution chancmp::push_through_channel(const JointDistribution &j, const ClassicalChannel &w) {
    if (w.num_inputs() != j.num_signals()) {
        throw DimensionMismatch("push_through_channel: channel input size does not match the signal alphabet");
    }
    return JointDistribution(w.matrix() * j.probs(), w.outputs(), j.message_labels());
}

ClassicalChannel chancmp::compose(const ClassicalChannel &w2, const ClassicalChannel &w1) {
    if (w2.num_inputs() != w1.num_outputs()) {
        throw DimensionMismatch("compose: inner alphabets differ");
    }
    return ClassicalChannel(w2.matrix() * w1.matrix(), w1.inputs(), w2.outputs());
}
