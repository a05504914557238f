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

#ifndef CHANCMP_LP_H
#define CHANCMP_LP_H

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

namespace chancmp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Minimize, Maximize };

/// optimize c.x  subject to  A_i.x (rel_i) b_i,  x_j >= lower_j.
///
/// A lower bound of -infinity marks a free variable. An empty `lower` means all variables are
/// nonnegative.
struct LinearProgram {
    Eigen::VectorXd objective;
    Eigen::MatrixXd constraints;
    Eigen::VectorXd bounds;
    std::vector<Relation> relations;
    Sense sense = Sense::Minimize;
    Eigen::VectorXd lower;

    LinearProgram() = default;
    LinearProgram(Eigen::Index num_vars, Sense sense);

    Eigen::Index num_vars() const {
        return objective.size();
    }
    Eigen::Index num_constraints() const {
        return bounds.size();
    }

    /// Appends the row  coeffs.x (rel) rhs.
    void add_constraint(const Eigen::VectorXd &coeffs, Relation rel, double rhs);
    void set_free(Eigen::Index var);

    /// Throws std::invalid_argument on inconsistent sizes or non-finite data.
    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(LpStatus status);

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    double value = std::numeric_limits<double>::quiet_NaN();
    Eigen::VectorXd x;
    /// Lagrange multipliers, one per constraint row, for the problem in its stated sense.
    Eigen::VectorXd duals;
    /// Objective of the dual problem evaluated at `duals`.
    double dual_value = std::numeric_limits<double>::quiet_NaN();
    /// Largest violation of any primal constraint or bound.
    double primal_residual = 0;
    /// Largest violation of dual feasibility (sign of multipliers and reduced costs).
    double dual_residual = 0;
    int pivots = 0;

    double duality_gap() const {
        return std::abs(value - dual_value);
    }
    bool optimal() const {
        return status == LpStatus::Optimal;
    }
};

struct LpOptions {
    int max_pivots = 100000;
    double pivot_tolerance = 1e-9;
    double feasibility_tolerance = 1e-9;
};

/// Dense two-phase simplex with Bland's anti-cycling rule.
///
/// After the last pivot the basic solution and the multipliers are recomputed from the final basis
/// with an LU solve, so `x` and `duals` are accurate to working precision rather than to the
/// accumulated tableau error. A numerically singular final basis falls back to the tableau values.
LpSolution solve_lp(const LinearProgram &lp, const LpOptions &options = {});

}  // namespace chancmp

#endif
