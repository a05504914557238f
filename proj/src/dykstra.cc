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

#include "chancmp/dykstra.h"

#include "chancmp/errors.h"

using namespace chancmp;

AffineProjector::AffineProjector(Eigen::MatrixXd a, Eigen::VectorXd b, double rank_cutoff)
    : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != b_.size()) {
        throw DimensionMismatch("AffineProjector: one right-hand side per constraint row is required");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &s = svd.singularValues();
    double cutoff = rank_cutoff * (s.size() > 0 ? s(0) : 0.0);
    Eigen::VectorXd inv = s.unaryExpr([cutoff](double x) { return x > cutoff ? 1.0 / x : 0.0; });
    pinv_ = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
    inconsistency_ = (b_ - a_ * (pinv_ * b_)).norm();
}

Eigen::VectorXd AffineProjector::project(const Eigen::VectorXd &x) const {
    return x - pinv_ * (a_ * x - b_);
}

Eigen::VectorXd chancmp::stack_blocks(const std::vector<CMat> &blocks) {
    Eigen::Index d = blocks.front().rows();
    Eigen::VectorXd x(static_cast<Eigen::Index>(blocks.size()) * d * d);
    for (size_t k = 0; k < blocks.size(); ++k) {
        x.segment(static_cast<Eigen::Index>(k) * d * d, d * d) = hermitian_to_real(blocks[k]);
    }
    return x;
}

std::vector<CMat> chancmp::unstack_blocks(const Eigen::VectorXd &x, size_t num_blocks, Eigen::Index block_dim) {
    Eigen::Index n = block_dim * block_dim;
    if (x.size() != static_cast<Eigen::Index>(num_blocks) * n) {
        throw DimensionMismatch("unstack_blocks: coordinate count does not match the block layout");
    }
    std::vector<CMat> out;
    for (size_t k = 0; k < num_blocks; ++k) {
        out.push_back(real_to_hermitian(x.segment(static_cast<Eigen::Index>(k) * n, n), block_dim));
    }
    return out;
}

DykstraResult chancmp::dykstra_psd_affine(
    size_t num_blocks,
    Eigen::Index block_dim,
    const AffineProjector &affine,
    const Eigen::VectorXd &start,
    const std::function<double(const std::vector<CMat> &)> &residual,
    const DykstraOptions &options) {
    Eigen::Index n = block_dim * block_dim;
    if (affine.dimension() != static_cast<Eigen::Index>(num_blocks) * n || start.size() != affine.dimension()) {
        throw DimensionMismatch("dykstra_psd_affine: affine set and start point must match the block layout");
    }

    // x: affine iterate, y: PSD iterate, p and q: Dykstra corrections for the cone and the affine set.
    Eigen::VectorXd x = affine.project(start);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(x.size());
    Eigen::VectorXd q = Eigen::VectorXd::Zero(x.size());
    Eigen::VectorXd y = x;
    std::vector<CMat> blocks(num_blocks);
    std::vector<double> history;

    DykstraResult result;
    for (int it = 1; it <= options.max_iterations; ++it) {
        Eigen::VectorXd z = x + p;
        for (size_t k = 0; k < num_blocks; ++k) {
            Eigen::Index off = static_cast<Eigen::Index>(k) * n;
            blocks[k] = project_psd(real_to_hermitian(z.segment(off, n), block_dim));
            y.segment(off, n) = hermitian_to_real(blocks[k]);
        }
        p = z - y;
        Eigen::VectorXd w = y + q;
        x = affine.project(w);
        q = w - x;

        if (it % options.check_every != 0 && it != options.max_iterations) {
            continue;
        }
        double r = residual(blocks);
        result.residual = r;
        result.iterations = it;
        if (r <= options.target_residual) {
            result.stop = DykstraStop::Converged;
            break;
        }
        history.push_back(r);
        auto window = static_cast<size_t>(options.stall_window / options.check_every);
        if (it >= options.stall_min_iterations && history.size() > window) {
            double before = history[history.size() - 1 - window];
            if (r > options.stall_ratio * before) {
                result.stop = DykstraStop::Stalled;
                break;
            }
        }
        result.stop = DykstraStop::IterationLimit;
    }
    result.psd_blocks = blocks;
    result.affine_point = x;
    return result;
}
