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

#ifndef CHANCMP_MINIMAX_H
#define CHANCMP_MINIMAX_H

#include <Eigen/Dense>

namespace chancmp {

/// A bilinear game f(y, z) = y^T F z over mixed strategies y (rows, minimizing) and z (columns,
/// maximizing). Rows and columns are the vertices of the two strategy polytopes.
struct BilinearGame {
    explicit BilinearGame(Eigen::MatrixXd payoff);
    Eigen::MatrixXd payoff;
};

struct MinimaxResult {
    /// max_z min_y f(y, z)
    double maximin = 0;
    /// min_y max_z f(y, z)
    double minimax = 0;
    /// Optimal strategy of the minimizing (row) player.
    Eigen::VectorXd row_strategy;
    /// Optimal strategy of the maximizing (column) player.
    Eigen::VectorXd column_strategy;

    double value() const {
        return 0.5 * (maximin + minimax);
    }
};

/// Solves both orders of optimization as two independent linear programs and checks that they
/// agree to 1e-9. Throws IterationLimit if either program fails to reach optimality, and
/// std::logic_error if the two values disagree.
MinimaxResult bilinear_minimax(const BilinearGame &game);

}  // namespace chancmp

#endif
