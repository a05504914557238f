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

#ifndef CHANCMP_DYKSTRA_H
#define CHANCMP_DYKSTRA_H

#include <functional>
#include <vector>

#include "chancmp/linalg.h"

namespace chancmp {

/// Euclidean projection onto {x : A x = b}, through a precomputed pseudo-inverse. When the system is
/// inconsistent the projection lands on the least-squares solutions instead.
class AffineProjector {
   public:
    AffineProjector(Eigen::MatrixXd a, Eigen::VectorXd b, double rank_cutoff = 1e-10);

    Eigen::VectorXd project(const Eigen::VectorXd &x) const;
    /// |b - A A^+ b|; zero iff the constraints are consistent.
    double inconsistency() const {
        return inconsistency_;
    }
    Eigen::Index dimension() const {
        return a_.cols();
    }

   private:
    Eigen::MatrixXd a_;
    Eigen::VectorXd b_;
    Eigen::MatrixXd pinv_;
    double inconsistency_ = 0;
};

struct DykstraOptions {
    int max_iterations = 20000;
    /// The residual callback runs every `check_every` iterations.
    int check_every = 10;
    /// Stop once the residual falls below this.
    double target_residual = 1e-9;
    int stall_window = 500;
    int stall_min_iterations = 1000;
    /// Stalled when the residual has not dropped below stall_ratio times its value one window ago.
    double stall_ratio = 0.99;
};

enum class DykstraStop { Converged, Stalled, IterationLimit };

struct DykstraResult {
    /// Last iterate of the PSD step, one block per entry.
    std::vector<CMat> psd_blocks;
    /// Last iterate of the affine step, in real coordinates.
    Eigen::VectorXd affine_point;
    double residual = 0;
    int iterations = 0;
    DykstraStop stop = DykstraStop::IterationLimit;
};

/// Dykstra's alternating projections between the product of PSD cones over `num_blocks` Hermitian
/// blocks of size `block_dim` (stacked real coordinates, see hermitian_to_real) and an affine set.
///
/// `residual` scores a PSD iterate; the run stops when it reaches the target, stalls, or exhausts
/// the iteration budget.
DykstraResult dykstra_psd_affine(
    size_t num_blocks,
    Eigen::Index block_dim,
    const AffineProjector &affine,
    const Eigen::VectorXd &start,
    const std::function<double(const std::vector<CMat> &)> &residual,
    const DykstraOptions &options = {});

/// Stacks real coordinates of a tuple of Hermitian blocks.
Eigen::VectorXd stack_blocks(const std::vector<CMat> &blocks);
std::vector<CMat> unstack_blocks(const Eigen::VectorXd &x, size_t num_blocks, Eigen::Index block_dim);

}  // namespace chancmp

#endif
