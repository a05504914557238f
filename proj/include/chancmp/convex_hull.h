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

#ifndef CHANCMP_CONVEX_HULL_H
#define CHANCMP_CONVEX_HULL_H

#include <Eigen/Dense>
#include <optional>
#include <variant>
#include <vector>

namespace chancmp {

/// The convex hull of a finite point cloud in R^n, given by its generating points.
class PointCloudHull {
   public:
    explicit PointCloudHull(std::vector<Eigen::VectorXd> vertices);

    const std::vector<Eigen::VectorXd> &vertices() const {
        return vertices_;
    }
    Eigen::Index dimension() const {
        return vertices_.front().size();
    }
    size_t size() const {
        return vertices_.size();
    }
    /// max over the hull of k.x
    double support(const Eigen::VectorXd &k) const;

   private:
    std::vector<Eigen::VectorXd> vertices_;
};

/// The hyperplane {z : normal.z = offset}.
struct Hyperplane {
    Eigen::VectorXd normal;
    double offset = 0;
};

struct MinNormPoint {
    Eigen::VectorXd point;
    /// Convex weights over the hull's vertices reproducing `point`.
    Eigen::VectorXd weights;
    /// max over vertices x of (y - point).(x - point); nonpositive at the exact minimizer.
    double gap = 0;
    int iterations = 0;
};

struct MinNormOptions {
    double gap_tolerance = 1e-10;
    int max_iterations = 200000;
};

/// The point of the hull closest to y, by Frank-Wolfe with away steps and exact line search.
///
/// Throws IterationLimit if the Frank-Wolfe gap does not reach the tolerance.
MinNormPoint min_norm_point(const PointCloudHull &hull, const Eigen::VectorXd &y, const MinNormOptions &options = {});

struct Inside {
    /// Distance from the query point to the hull (at most 1e-9).
    double distance = 0;
};

struct Separation {
    Hyperplane plane;
    /// offset - max over vertices of normal.x; strictly positive.
    double vertex_margin = 0;
    /// normal.y - offset; strictly positive.
    double point_margin = 0;
    Eigen::VectorXd closest_point;
};

/// Strictly separates y from the hull with k = y - x0 and offset (k.x0 + k.y)/2, where x0 is the
/// closest hull point; reports Inside when y lies within 1e-9 of the hull.
std::variant<Separation, Inside> separate_point(const PointCloudHull &hull, const Eigen::VectorXd &y);

struct InclusionResult {
    bool included = false;
    /// When not included: a direction k with support_c1(k) < support_c2(k).
    std::optional<Eigen::VectorXd> direction;
    /// Index of the c2 vertex that was separated from c1 (exhaustive mode only).
    std::optional<size_t> witness_vertex;
};

struct InclusionOptions {
    /// Vertex count of c2 above which direction sampling replaces exhaustive vertex testing.
    size_t exhaustive_vertex_cap = 4096;
    /// Directions to test in sampled mode; random unit directions are drawn if empty.
    std::vector<Eigen::VectorXd> directions;
    size_t sampled_directions = 2000;
    unsigned long long seed = 1;
    double tolerance = 1e-9;
};

/// Decides whether conv(c2) is contained in conv(c1).
///
/// Exhaustive mode separates every vertex of c2 from c1 and is exact up to tolerance. Sampled mode
/// compares support functions along a finite set of directions: a `false` answer is certain, a
/// `true` answer is heuristic.
InclusionResult hull_inclusion(const PointCloudHull &c1, const PointCloudHull &c2, const InclusionOptions &options = {});

}  // namespace chancmp

#endif
