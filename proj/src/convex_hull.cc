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

#include "chancmp/convex_hull.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "chancmp/errors.h"

using namespace chancmp;

PointCloudHull::PointCloudHull(std::vector<Eigen::VectorXd> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) {
        throw InvariantViolation("PointCloudHull: no vertices");
    }
    for (const auto &v : vertices_) {
        if (v.size() != vertices_.front().size()) {
            throw DimensionMismatch("PointCloudHull: vertices of different dimension");
        }
        if (!v.allFinite()) {
            throw InvariantViolation("PointCloudHull: non-finite vertex");
        }
    }
}

double PointCloudHull::support(const Eigen::VectorXd &k) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto &v : vertices_) {
        best = std::max(best, k.dot(v));
    }
    return best;
}

namespace {

// Moves w toward the minimizer of |V_S lambda - y| over the affine hull of the active set S, as
// far as the simplex allows (Wolfe's minor cycle). Reaches interior optima exactly where plain
// Frank-Wolfe only converges sublinearly.
void corrective_step(const Eigen::MatrixXd &v, const Eigen::VectorXd &y, Eigen::VectorXd &w) {
    std::vector<Eigen::Index> active;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) > 0) {
            active.push_back(i);
        }
    }
    const auto m = static_cast<Eigen::Index>(active.size());
    if (m < 2) {
        return;
    }
    Eigen::MatrixXd vs(v.rows(), m);
    Eigen::VectorXd ws(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        vs.col(j) = v.col(active[static_cast<size_t>(j)]);
        ws(j) = w(active[static_cast<size_t>(j)]);
    }
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
    kkt.topLeftCorner(m, m) = vs.transpose() * vs;
    kkt.block(0, m, m, 1).setOnes();
    kkt.block(m, 0, 1, m).setOnes();
    Eigen::VectorXd rhs(m + 1);
    rhs << vs.transpose() * y, 1;
    Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    Eigen::VectorXd lambda = sol.head(m);
    if (!lambda.allFinite() || std::abs(lambda.sum() - 1) > 1e-9) {
        return;
    }
    double before = (vs * ws - y).squaredNorm();
    if ((vs * lambda - y).squaredNorm() > before) {
        return;
    }
    double theta = 1;
    for (Eigen::Index j = 0; j < m; ++j) {
        if (lambda(j) < 0) {
            theta = std::min(theta, ws(j) / (ws(j) - lambda(j)));
        }
    }
    Eigen::VectorXd next = ws + theta * (lambda - ws);
    for (Eigen::Index j = 0; j < m; ++j) {
        w(active[static_cast<size_t>(j)]) = next(j) > 1e-15 ? next(j) : 0.0;
    }
    w /= w.sum();
}

}  // namespace

MinNormPoint chancmp::min_norm_point(const PointCloudHull &hull, const Eigen::VectorXd &y, const MinNormOptions &options) {
    if (y.size() != hull.dimension()) {
        throw DimensionMismatch("min_norm_point: point dimension differs from hull dimension");
    }
    const auto &verts = hull.vertices();
    const auto n = static_cast<Eigen::Index>(verts.size());

    Eigen::MatrixXd v(hull.dimension(), n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v.col(i) = verts[static_cast<size_t>(i)];
    }

    Eigen::Index start = 0;
    ((v.colwise() - y).colwise().squaredNorm()).minCoeff(&start);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    w(start) = 1;

    MinNormPoint result;
    for (int it = 0; it < options.max_iterations; ++it) {
        Eigen::VectorXd x = v * w;
        Eigen::VectorXd g = x - y;
        Eigen::VectorXd dots = v.transpose() * g;
        double gx = g.dot(x);

        Eigen::Index s = 0;
        dots.minCoeff(&s);
        double fw_gap = gx - dots(s);
        if (fw_gap <= options.gap_tolerance) {
            result.point = x;
            result.weights = w;
            result.gap = fw_gap;
            result.iterations = it;
            return result;
        }

        Eigen::Index a = -1;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (w(i) > 0 && (a < 0 || dots(i) > dots(a))) {
                a = i;
            }
        }
        double away_gap = dots(a) - gx;

        if (fw_gap >= away_gap || w(a) >= 1.0) {
            Eigen::VectorXd d = v.col(s) - x;
            double dd = d.squaredNorm();
            double gamma = dd > 0 ? std::clamp(-g.dot(d) / dd, 0.0, 1.0) : 0.0;
            w *= 1 - gamma;
            w(s) += gamma;
        } else {
            Eigen::VectorXd d = x - v.col(a);
            double dd = d.squaredNorm();
            double gamma_max = w(a) / (1 - w(a));
            double gamma = dd > 0 ? std::clamp(-g.dot(d) / dd, 0.0, gamma_max) : 0.0;
            w *= 1 + gamma;
            w(a) -= gamma;
            if (gamma >= gamma_max) {
                w(a) = 0;
            }
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            w(i) = std::max(w(i), 0.0);
        }
        w /= w.sum();
        corrective_step(v, y, w);
    }
    throw IterationLimit("min_norm_point: Frank-Wolfe gap did not reach tolerance");
}

std::variant<Separation, Inside> chancmp::separate_point(const PointCloudHull &hull, const Eigen::VectorXd &y) {
    constexpr double kInsideDistance = 1e-9;
    MinNormOptions opt;
    for (int attempt = 0; attempt < 4; ++attempt) {
        MinNormPoint mnp = min_norm_point(hull, y, opt);
        Eigen::VectorXd k = y - mnp.point;
        double dist = k.norm();
        if (dist <= kInsideDistance) {
            return Inside{dist};
        }
        double alpha = 0.5 * (k.dot(mnp.point) + k.dot(y));
        double vertex_margin = alpha - hull.support(k);
        double point_margin = k.dot(y) - alpha;
        if (vertex_margin > 0 && point_margin > 0) {
            Separation sep;
            sep.plane = Hyperplane{k, alpha};
            sep.vertex_margin = vertex_margin;
            sep.point_margin = point_margin;
            sep.closest_point = mnp.point;
            return sep;
        }
        // The margin on the vertex side is |k|^2/2 - gap; tighten the gap below it.
        opt.gap_tolerance = std::min(opt.gap_tolerance * 1e-2, 0.1 * dist * dist);
    }
    // Closer than the attainable numerical resolution.
    MinNormPoint mnp = min_norm_point(hull, y, opt);
    return Inside{(y - mnp.point).norm()};
}

InclusionResult chancmp::hull_inclusion(const PointCloudHull &c1, const PointCloudHull &c2, const InclusionOptions &options) {
    if (c1.dimension() != c2.dimension()) {
        throw DimensionMismatch("hull_inclusion: hulls of different dimension");
    }
    InclusionResult result;
    if (c2.size() <= options.exhaustive_vertex_cap && options.directions.empty()) {
        for (size_t i = 0; i < c2.size(); ++i) {
            auto verdict = separate_point(c1, c2.vertices()[i]);
            if (auto *sep = std::get_if<Separation>(&verdict)) {
                result.included = false;
                result.direction = sep->plane.normal;
                result.witness_vertex = i;
                return result;
            }
        }
        result.included = true;
        return result;
    }

    std::vector<Eigen::VectorXd> dirs = options.directions;
    if (dirs.empty()) {
        std::mt19937_64 rng(options.seed);
        std::normal_distribution<double> normal;
        for (size_t i = 0; i < options.sampled_directions; ++i) {
            Eigen::VectorXd k(c1.dimension());
            for (Eigen::Index j = 0; j < k.size(); ++j) {
                k(j) = normal(rng);
            }
            dirs.push_back(k.normalized());
        }
    }
    for (const auto &k : dirs) {
        if (c1.support(k) < c2.support(k) - options.tolerance) {
            result.included = false;
            result.direction = k;
            return result;
        }
    }
    result.included = true;
    return result;
}
