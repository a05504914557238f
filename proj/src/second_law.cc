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

#include "chancmp/second_law.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>

#include "chancmp/classical_comparison.h"
#include "chancmp/errors.h"

using namespace chancmp;

namespace {

size_t input_dim(const AnyChannel &c) {
    return std::visit(
        [](const auto &ch) -> size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(ch)>, ClassicalChannel>) {
                return ch.num_inputs();
            } else {
                return static_cast<size_t>(ch.d_in());
            }
        },
        c);
}

size_t output_dim(const AnyChannel &c) {
    return std::visit(
        [](const auto &ch) -> size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(ch)>, ClassicalChannel>) {
                return ch.num_outputs();
            } else {
                return static_cast<size_t>(ch.d_out());
            }
        },
        c);
}

const AnyChannel &stage_channel(const PipelineStage &s) {
    if (auto *m = std::get_if<MemorylessStage>(&s)) {
        return m->channel;
    }
    return std::get<MemoryStage>(s).joint;
}

double bits(double p) {
    return std::max(0.0, -std::log2(p));
}

// Classical state: rows s * M + m, columns u.
Eigen::MatrixXd signal_marginal(const Eigen::MatrixXd &state, size_t memory) {
    auto mem = static_cast<Eigen::Index>(memory);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(state.rows() / mem, state.cols());
    for (Eigen::Index r = 0; r < state.rows(); ++r) {
        out.row(r / mem) += state.row(r);
    }
    return out;
}

// Quantum: (Phi (x) id_M) on signal (x) memory.
CMat apply_on_signal(const QuantumChannel &phi, Eigen::Index memory, const CMat &x) {
    if (memory == 1) {
        return phi.apply(x);
    }
    auto s_in = static_cast<size_t>(phi.d_in());
    auto s_out = static_cast<size_t>(phi.d_out());
    auto m = static_cast<size_t>(memory);
    CMat swapped = permute_subsystems(x, {s_in, m}, {1, 0});
    CMat out = apply_extended(phi, memory, swapped);
    return permute_subsystems(out, {m, s_out}, {1, 0});
}

}  // namespace

bool Pipeline::quantum() const {
    return !stages.empty() && std::holds_alternative<QuantumChannel>(stage_channel(stages.front()));
}

void Pipeline::validate(size_t signal_dim) const {
    if (stages.empty()) {
        throw InvariantViolation("Pipeline: no stages");
    }
    if (memory_dim < 1) {
        throw InvariantViolation("Pipeline: memory dimension must be positive");
    }
    bool q = quantum();
    size_t dim = signal_dim;
    for (size_t k = 0; k < stages.size(); ++k) {
        const AnyChannel &c = stage_channel(stages[k]);
        if (std::holds_alternative<QuantumChannel>(c) != q) {
            throw InvariantViolation("Pipeline: classical and quantum stages cannot be mixed");
        }
        std::string where = "Pipeline stage " + std::to_string(k + 1);
        if (auto *m = std::get_if<MemoryStage>(&stages[k])) {
            if (input_dim(c) != m->signal_in * memory_dim || output_dim(c) != m->signal_out * memory_dim) {
                throw DimensionMismatch(where + ": joint channel does not act on signal (x) memory");
            }
            if (m->signal_in != dim) {
                throw DimensionMismatch(where + ": signal dimension does not chain");
            }
            dim = m->signal_out;
        } else {
            if (input_dim(c) != dim) {
                throw DimensionMismatch(where + ": signal dimension does not chain");
            }
            dim = output_dim(c);
        }
    }
}

ProcessTrace chancmp::run_pipeline(const Pipeline &pipeline, const Probe &probe, const std::string &probe_id) {
    ProcessTrace trace;
    trace.probe_id = probe_id;
    auto record = [&](double lo, double hi) {
        trace.hmin_lower.push_back(lo);
        trace.hmin_upper.push_back(hi);
    };
    const size_t mem = pipeline.memory_dim;

    if (auto *joint = std::get_if<JointDistribution>(&probe)) {
        if (pipeline.quantum()) {
            throw InvariantViolation("run_pipeline: classical probe for a quantum pipeline");
        }
        pipeline.validate(joint->num_signals());
        // Memory starts in symbol 0.
        Eigen::MatrixXd state = Eigen::MatrixXd::Zero(joint->probs().rows() * static_cast<Eigen::Index>(mem), joint->probs().cols());
        for (Eigen::Index s = 0; s < joint->probs().rows(); ++s) {
            state.row(s * static_cast<Eigen::Index>(mem)) = joint->probs().row(s);
        }
        auto measure = [&]() {
            double h = conditional_min_entropy(JointDistribution(signal_marginal(state, mem)));
            record(h, h);
        };
        measure();
        for (const auto &stage : pipeline.stages) {
            if (auto *m = std::get_if<MemorylessStage>(&stage)) {
                const auto &w = std::get<ClassicalChannel>(m->channel).matrix();
                Eigen::MatrixXd next = Eigen::MatrixXd::Zero(w.rows() * static_cast<Eigen::Index>(mem), state.cols());
                for (Eigen::Index s = 0; s < w.cols(); ++s) {
                    for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(mem); ++r) {
                        for (Eigen::Index y = 0; y < w.rows(); ++y) {
                            next.row(y * static_cast<Eigen::Index>(mem) + r) += w(y, s) * state.row(s * static_cast<Eigen::Index>(mem) + r);
                        }
                    }
                }
                state = next;
            } else {
                state = std::get<ClassicalChannel>(std::get<MemoryStage>(stage).joint).matrix() * state;
            }
            measure();
        }
        return trace;
    }

    const auto &ens = std::get<CqEnsemble>(probe);
    if (!pipeline.quantum()) {
        throw InvariantViolation("run_pipeline: quantum probe for a classical pipeline");
    }
    pipeline.validate(static_cast<size_t>(ens.dim()));
    auto m = static_cast<Eigen::Index>(mem);
    CMat mem0 = matrix_unit(m, 0, 0);
    std::vector<CMat> states;
    for (size_t u = 0; u < ens.size(); ++u) {
        states.push_back(kron(ens.weighted(u), mem0));
    }
    Eigen::Index signal = ens.dim();
    auto measure = [&]() {
        std::vector<CMat> reduced;
        for (const auto &x : states) {
            reduced.push_back(partial_trace(x, {static_cast<size_t>(signal), mem}, {1}));
        }
        PguessBracket b = pguess_bracket(CqEnsemble::from_weighted(reduced));
        record(bits(b.upper), bits(b.lower));
    };
    measure();
    for (const auto &stage : pipeline.stages) {
        if (auto *ml = std::get_if<MemorylessStage>(&stage)) {
            const auto &phi = std::get<QuantumChannel>(ml->channel);
            for (auto &x : states) {
                x = apply_on_signal(phi, m, x);
            }
            signal = phi.d_out();
        } else {
            const auto &ms = std::get<MemoryStage>(stage);
            const auto &phi = std::get<QuantumChannel>(ms.joint);
            for (auto &x : states) {
                x = phi.apply(x);
            }
            signal = static_cast<Eigen::Index>(ms.signal_out);
        }
        measure();
    }
    return trace;
}

MemoryVerdict chancmp::detect_memory(const ProcessTrace &trace, double tol) {
    MemoryVerdict v;
    v.probe_id = trace.probe_id;
    for (size_t t = 1; t < trace.size(); ++t) {
        double best = 0;
        size_t ref = 0;
        for (size_t s = 0; s < t; ++s) {
            double drop = trace.hmin_lower[s] - trace.hmin_upper[t];
            if (drop > best) {
                best = drop;
                ref = s;
            }
        }
        if (best > tol) {
            v.kind = MemoryVerdictKind::MemoryWitnessed;
            v.stage = t;
            v.reference_stage = ref;
            v.decrease = best;
            return v;
        }
    }
    return v;
}

Pipeline chancmp::random_markov_classical(size_t input_dim, size_t num_stages, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> size(2, 4);
    Pipeline p;
    size_t dim = input_dim;
    for (size_t k = 0; k < num_stages; ++k) {
        size_t out = size(rng);
        p.stages.push_back(MemorylessStage{random_channel(dim, out, rng())});
        dim = out;
    }
    return p;
}

Pipeline chancmp::random_markov_quantum(size_t num_stages, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> rank(1, 4);
    Pipeline p;
    for (size_t k = 0; k < num_stages; ++k) {
        p.stages.push_back(MemorylessStage{QuantumChannel::random(2, 2, rank(rng), rng())});
    }
    return p;
}

namespace {

// Deterministic joint map on (s, m) symbols, indexed s * 2 + m for bits.
ClassicalChannel bit_pair_map(const std::function<std::pair<int, int>(int, int)> &f) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
    for (int s = 0; s < 2; ++s) {
        for (int m = 0; m < 2; ++m) {
            auto [s2, m2] = f(s, m);
            w(s2 * 2 + m2, s * 2 + m) = 1;
        }
    }
    return ClassicalChannel(w);
}

}  // namespace

DemoPipeline chancmp::make_demo_pipelines(const std::string &kind, unsigned long long seed) {
    if (kind == "markov-classical") {
        return DemoPipeline{random_markov_classical(3, 3, seed), JointDistribution::perfectly_correlated(3)};
    }
    if (kind == "markov-quantum") {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> shrink(0.5, 1.0);
        Pipeline p;
        for (int k = 0; k < 3; ++k) {
            p.stages.push_back(MemorylessStage{QuantumChannel::depolarizing(2, shrink(rng))});
        }
        CVec plus(2);
        plus << 1, 1;
        CqEnsemble probe(Eigen::Vector2d(0.5, 0.5), {DensityOperator::basis(2, 0), DensityOperator::pure(plus)});
        return DemoPipeline{p, probe};
    }
    if (kind == "memory-classical") {
        Pipeline p;
        p.memory_dim = 2;
        p.stages.push_back(MemoryStage{bit_pair_map([](int s, int) { return std::pair{s, s}; }), 2, 2});
        p.stages.push_back(MemorylessStage{ClassicalChannel::constant(2, 2, 0)});
        p.stages.push_back(MemoryStage{bit_pair_map([](int, int m) { return std::pair{m, m}; }), 2, 2});
        return DemoPipeline{p, JointDistribution::perfectly_correlated(2)};
    }
    if (kind == "memory-quantum") {
        // Copy by CNOT into the memory, reset the signal, then swap the memory back in.
        CMat cnot = CMat::Zero(4, 4);
        cnot(0, 0) = cnot(1, 1) = cnot(3, 2) = cnot(2, 3) = 1;
        CMat swap = CMat::Zero(4, 4);
        swap(0, 0) = swap(2, 1) = swap(1, 2) = swap(3, 3) = 1;
        Pipeline p;
        p.memory_dim = 2;
        p.stages.push_back(MemoryStage{QuantumChannel::unitary(cnot), 2, 2});
        p.stages.push_back(MemorylessStage{QuantumChannel::constant(2, DensityOperator::basis(2, 0))});
        p.stages.push_back(MemoryStage{QuantumChannel::unitary(swap), 2, 2});
        CqEnsemble probe(Eigen::Vector2d(0.5, 0.5), {DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)});
        return DemoPipeline{p, probe};
    }
    throw std::invalid_argument("make_demo_pipelines: unknown kind '" + kind + "'");
}

void chancmp::write_trace_csv(std::ostream &out, const ProcessTrace &trace) {
    out << "stage,hmin_lower,hmin_upper,probe\n";
    auto old = out.precision(17);
    for (size_t t = 0; t < trace.size(); ++t) {
        out << t << "," << trace.hmin_lower[t] << "," << trace.hmin_upper[t] << "," << trace.probe_id << "\n";
    }
    out.precision(old);
}
