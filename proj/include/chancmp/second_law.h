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

#ifndef CHANCMP_SECOND_LAW_H
#define CHANCMP_SECOND_LAW_H

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chancmp/probability.h"
#include "chancmp/quantum_core.h"
#include "chancmp/quantum_minentropy.h"

namespace chancmp {

using AnyChannel = std::variant<ClassicalChannel, QuantumChannel>;

/// A channel acting on the signal alone.
struct MemorylessStage {
    AnyChannel channel;
};

/// A channel acting jointly on signal (x) memory, signal first. Classical joint symbols are indexed
/// s * memory_dim + m.
struct MemoryStage {
    AnyChannel joint;
    size_t signal_in = 0;
    size_t signal_out = 0;
};

using PipelineStage = std::variant<MemorylessStage, MemoryStage>;
using Probe = std::variant<JointDistribution, CqEnsemble>;

/// A sequence of stages with a persistent memory register that starts in its first basis state.
struct Pipeline {
    std::vector<PipelineStage> stages;
    /// 1 when there is no memory.
    size_t memory_dim = 1;

    bool quantum() const;
    /// Checks that all channels have the same flavor, that dimensions chain, and that memory stages
    /// agree with memory_dim. Throws DimensionMismatch or InvariantViolation.
    void validate(size_t signal_dim) const;
};

/// H_min(U|S_t) at every stage boundary t = 0 (before the first stage), 1, ..., n. Classical
/// values have lower == upper; quantum values are brackets.
struct ProcessTrace {
    std::vector<double> hmin_lower;
    std::vector<double> hmin_upper;
    std::string probe_id;

    size_t size() const {
        return hmin_lower.size();
    }
};

ProcessTrace run_pipeline(const Pipeline &pipeline, const Probe &probe, const std::string &probe_id = "probe");

enum class MemoryVerdictKind { ConsistentWithMemoryless, MemoryWitnessed };

struct MemoryVerdict {
    MemoryVerdictKind kind = MemoryVerdictKind::ConsistentWithMemoryless;
    /// Boundary index after the stage where H_min fell (MemoryWitnessed only).
    std::optional<size_t> stage;
    /// Earlier boundary it fell below.
    std::optional<size_t> reference_stage;
    /// Certified decrease in bits: earlier lower endpoint minus later upper endpoint.
    double decrease = 0;
    std::string probe_id;
};

/// MemoryWitnessed at the first boundary t whose upper H_min endpoint lies more than tol below the
/// lower endpoint at some earlier boundary. Bracket separation keeps the verdict sound for quantum
/// traces.
MemoryVerdict detect_memory(const ProcessTrace &trace, double tol = 1e-6);

struct DemoPipeline {
    Pipeline pipeline;
    Probe probe;
};

/// kind in {markov-classical, markov-quantum, memory-classical, memory-quantum}.
DemoPipeline make_demo_pipelines(const std::string &kind, unsigned long long seed);

/// A chain of random memoryless classical channels through alphabets of size 2..4.
Pipeline random_markov_classical(size_t input_dim, size_t num_stages, unsigned long long seed);

/// A chain of random memoryless qubit channels.
Pipeline random_markov_quantum(size_t num_stages, unsigned long long seed);

/// Rows "stage,hmin_lower,hmin_upper,probe" with a header line.
void write_trace_csv(std::ostream &out, const ProcessTrace &trace);

}  // namespace chancmp

#endif
