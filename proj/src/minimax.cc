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

#include "chancmp/minimax.h"

#include <sstream>
#include <stdexcept>

#include "chancmp/errors.h"
#include "chancmp/lp.h"

using namespace chancmp;

BilinearGame::BilinearGame(Eigen::MatrixXd payoff_) : payoff(std::move(payoff_)) {
    if (payoff.size() == 0 || !payoff.allFinite()) {
        throw InvariantViolation("BilinearGame: payoff must be a nonempty finite matrix");
    }
}

MinimaxResult chancmp::bilinear_minimax(const BilinearGame &game) {
    const Eigen::MatrixXd &f = game.payoff;
    Eigen::Index rows = f.rows();
    Eigen::Index cols = f.cols();

    // max v  s.t.  (F z)_i >= v for every row i,  z in the simplex.  Variables (z, v).
    LinearProgram outer(cols + 1, Sense::Maximize);
    outer.objective(cols) = 1;
    outer.set_free(cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        Eigen::VectorXd a(cols + 1);
        a.head(cols) = f.row(i).transpose();
        a(cols) = -1;
        outer.add_constraint(a, Relation::GreaterEqual, 0);
    }
    Eigen::VectorXd simplex_z = Eigen::VectorXd::Zero(cols + 1);
    simplex_z.head(cols).setOnes();
    outer.add_constraint(simplex_z, Relation::Equal, 1);

    // min w  s.t.  (y^T F)_j <= w for every column j,  y in the simplex.  Variables (y, w).
    LinearProgram inner(rows + 1, Sense::Minimize);
    inner.objective(rows) = 1;
    inner.set_free(rows);
    for (Eigen::Index j = 0; j < cols; ++j) {
        Eigen::VectorXd a(rows + 1);
        a.head(rows) = f.col(j);
        a(rows) = -1;
        inner.add_constraint(a, Relation::LessEqual, 0);
    }
    Eigen::VectorXd simplex_y = Eigen::VectorXd::Zero(rows + 1);
    simplex_y.head(rows).setOnes();
    inner.add_constraint(simplex_y, Relation::Equal, 1);

    LpSolution a = solve_lp(outer);
    LpSolution b = solve_lp(inner);
    if (!a.optimal() || !b.optimal()) {
        throw IterationLimit("bilinear_minimax: linear program did not reach optimality");
    }

    MinimaxResult r;
    r.maximin = a.value;
    r.minimax = b.value;
    r.column_strategy = a.x.head(cols).cwiseMax(0.0);
    r.column_strategy /= r.column_strategy.sum();
    r.row_strategy = b.x.head(rows).cwiseMax(0.0);
    r.row_strategy /= r.row_strategy.sum();
    if (std::abs(r.maximin - r.minimax) > 1e-9) {
        std::stringstream ss;
        ss.precision(17);
        ss << "bilinear_minimax: maximin " << r.maximin << " and minimax " << r.minimax << " disagree";
        throw std::logic_error(ss.str());
    }
    return r;
}
