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

#include "chancmp/lp.h"

#include <cmath>
#include <stdexcept>

using namespace chancmp;

LinearProgram::LinearProgram(Eigen::Index num_vars, Sense sense)
    : objective(Eigen::VectorXd::Zero(num_vars)),
      constraints(0, num_vars),
      bounds(0),
      sense(sense),
      lower(Eigen::VectorXd::Zero(num_vars)) {
}

void LinearProgram::add_constraint(const Eigen::VectorXd &coeffs, Relation rel, double rhs) {
    if (coeffs.size() != num_vars()) {
        throw std::invalid_argument("LinearProgram::add_constraint: coefficient count mismatch");
    }
    Eigen::Index m = constraints.rows();
    constraints.conservativeResize(m + 1, num_vars());
    constraints.row(m) = coeffs.transpose();
    bounds.conservativeResize(m + 1);
    bounds(m) = rhs;
    relations.push_back(rel);
}

void LinearProgram::set_free(Eigen::Index var) {
    if (lower.size() == 0) {
        lower = Eigen::VectorXd::Zero(num_vars());
    }
    lower(var) = -std::numeric_limits<double>::infinity();
}

void LinearProgram::validate() const {
    Eigen::Index n = num_vars();
    if (constraints.cols() != n || constraints.rows() != bounds.size() ||
        static_cast<Eigen::Index>(relations.size()) != bounds.size() || (lower.size() != 0 && lower.size() != n)) {
        throw std::invalid_argument("LinearProgram: inconsistent dimensions");
    }
    if (!objective.allFinite() || !constraints.allFinite() || !bounds.allFinite()) {
        throw std::invalid_argument("LinearProgram: non-finite data");
    }
    for (Eigen::Index j = 0; j < lower.size(); ++j) {
        if (std::isnan(lower(j)) || lower(j) == std::numeric_limits<double>::infinity()) {
            throw std::invalid_argument("LinearProgram: invalid lower bound");
        }
    }
}

std::string chancmp::to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal:
            return "optimal";
        case LpStatus::Infeasible:
            return "infeasible";
        case LpStatus::Unbounded:
            return "unbounded";
        case LpStatus::IterationLimit:
            return "iteration-limit";
    }
    return "unknown";
}

namespace {

// min c.x  s.t.  A x = b,  x >= 0,  b >= 0.
struct StandardForm {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    std::vector<double> row_sign;
    // Original variable j maps to column plus[j] (and minus[j] >= 0 for free variables).
    std::vector<Eigen::Index> plus, minus;
    Eigen::VectorXd shift;
};

StandardForm to_standard_form(const LinearProgram &lp) {
    Eigen::Index n = lp.num_vars();
    Eigen::Index m = lp.num_constraints();
    Eigen::VectorXd lower = lp.lower.size() ? lp.lower : Eigen::VectorXd::Zero(n);

    StandardForm sf;
    sf.shift = Eigen::VectorXd::Zero(n);
    Eigen::Index cols = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        sf.plus.push_back(cols++);
        if (std::isinf(lower(j))) {
            sf.minus.push_back(cols++);
        } else {
            sf.minus.push_back(-1);
            sf.shift(j) = lower(j);
        }
    }
    Eigen::Index structural = cols;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (lp.relations[static_cast<size_t>(i)] != Relation::Equal) {
            ++cols;
        }
    }

    double obj_sign = lp.sense == Sense::Maximize ? -1.0 : 1.0;
    sf.a = Eigen::MatrixXd::Zero(m, cols);
    sf.c = Eigen::VectorXd::Zero(cols);
    sf.b = lp.bounds - lp.constraints * sf.shift;
    for (Eigen::Index j = 0; j < n; ++j) {
        sf.a.col(sf.plus[static_cast<size_t>(j)]) = lp.constraints.col(j);
        sf.c(sf.plus[static_cast<size_t>(j)]) = obj_sign * lp.objective(j);
        if (sf.minus[static_cast<size_t>(j)] >= 0) {
            sf.a.col(sf.minus[static_cast<size_t>(j)]) = -lp.constraints.col(j);
            sf.c(sf.minus[static_cast<size_t>(j)]) = -obj_sign * lp.objective(j);
        }
    }
    Eigen::Index slack = structural;
    for (Eigen::Index i = 0; i < m; ++i) {
        Relation rel = lp.relations[static_cast<size_t>(i)];
        if (rel == Relation::LessEqual) {
            sf.a(i, slack++) = 1;
        } else if (rel == Relation::GreaterEqual) {
            sf.a(i, slack++) = -1;
        }
    }
    sf.row_sign.assign(static_cast<size_t>(m), 1.0);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (sf.b(i) < 0) {
            sf.a.row(i) *= -1;
            sf.b(i) *= -1;
            sf.row_sign[static_cast<size_t>(i)] = -1;
        }
    }
    return sf;
}

class Tableau {
   public:
    // Columns [0, n) are structural, [n, n + m) artificial, last column is the right-hand side.
    Tableau(const StandardForm &sf, const LpOptions &opt) : opt_(opt), m_(sf.a.rows()), n_(sf.a.cols()) {
        t_ = Eigen::MatrixXd::Zero(m_, n_ + m_ + 1);
        t_.leftCols(n_) = sf.a;
        t_.block(0, n_, m_, m_).setIdentity();
        t_.col(n_ + m_) = sf.b;
        basis_.resize(static_cast<size_t>(m_));
        for (Eigen::Index i = 0; i < m_; ++i) {
            basis_[static_cast<size_t>(i)] = n_ + i;
        }
        active_.assign(static_cast<size_t>(m_), true);
    }

    // Runs the simplex method on the objective `cost` (length n + m). Columns with
    // `allowed[j] == false` never enter the basis.
    LpStatus optimize(const Eigen::VectorXd &cost, const std::vector<bool> &allowed, int &pivots) {
        while (true) {
            if (pivots >= opt_.max_pivots) {
                return LpStatus::IterationLimit;
            }
            Eigen::VectorXd reduced = reduced_costs(cost);
            Eigen::Index entering = -1;
            for (Eigen::Index j = 0; j < n_ + m_; ++j) {
                if (allowed[static_cast<size_t>(j)] && !is_basic(j) && reduced(j) < -opt_.pivot_tolerance) {
                    entering = j;  // Bland: lowest index.
                    break;
                }
            }
            if (entering < 0) {
                return LpStatus::Optimal;
            }
            Eigen::Index leaving = -1;
            double best_ratio = 0;
            for (Eigen::Index i = 0; i < m_; ++i) {
                if (!active_[static_cast<size_t>(i)] || t_(i, entering) <= opt_.pivot_tolerance) {
                    continue;
                }
                double ratio = t_(i, n_ + m_) / t_(i, entering);
                if (leaving < 0 || ratio < best_ratio - 1e-14 ||
                    (std::abs(ratio - best_ratio) <= 1e-14 &&
                     basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leaving)])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (leaving < 0) {
                return LpStatus::Unbounded;
            }
            pivot(leaving, entering);
            ++pivots;
        }
    }

    // Replaces basic artificial variables by structural ones, or retires their (redundant) rows.
    void expel_artificials(int &pivots) {
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (!active_[static_cast<size_t>(i)] || basis_[static_cast<size_t>(i)] < n_) {
                continue;
            }
            Eigen::Index col = -1;
            double best = 1e-9;
            for (Eigen::Index j = 0; j < n_; ++j) {
                if (!is_basic(j) && std::abs(t_(i, j)) > best) {
                    best = std::abs(t_(i, j));
                    col = j;
                }
            }
            if (col >= 0) {
                pivot(i, col);
                ++pivots;
            } else {
                active_[static_cast<size_t>(i)] = false;
            }
        }
    }

    double rhs(Eigen::Index i) const {
        return t_(i, n_ + m_);
    }
    const std::vector<Eigen::Index> &basis() const {
        return basis_;
    }
    const std::vector<bool> &active() const {
        return active_;
    }
    // Row i of c_B^T B^{-1}, read off the artificial columns, which started as the identity.
    double multiplier(const Eigen::VectorXd &cost, Eigen::Index i) const {
        double y = 0;
        for (Eigen::Index r = 0; r < m_; ++r) {
            if (active_[static_cast<size_t>(r)]) {
                y += cost(basis_[static_cast<size_t>(r)]) * t_(r, n_ + i);
            }
        }
        return y;
    }

   private:
    bool is_basic(Eigen::Index j) const {
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (active_[static_cast<size_t>(i)] && basis_[static_cast<size_t>(i)] == j) {
                return true;
            }
        }
        return false;
    }

    Eigen::VectorXd reduced_costs(const Eigen::VectorXd &cost) const {
        Eigen::VectorXd r = cost;
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (active_[static_cast<size_t>(i)]) {
                r -= cost(basis_[static_cast<size_t>(i)]) * t_.row(i).head(n_ + m_).transpose();
            }
        }
        return r;
    }

    void pivot(Eigen::Index row, Eigen::Index col) {
        t_.row(row) /= t_(row, col);
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (i != row && t_(i, col) != 0) {
                t_.row(i) -= t_(i, col) * t_.row(row);
            }
        }
        basis_[static_cast<size_t>(row)] = col;
    }

    const LpOptions &opt_;
    Eigen::Index m_, n_;
    Eigen::MatrixXd t_;
    std::vector<Eigen::Index> basis_;
    std::vector<bool> active_;
};

}  // namespace

LpSolution chancmp::solve_lp(const LinearProgram &lp, const LpOptions &options) {
    lp.validate();
    StandardForm sf = to_standard_form(lp);
    Eigen::Index m = sf.a.rows();
    Eigen::Index n = sf.a.cols();

    LpSolution sol;
    Tableau tab(sf, options);

    // Phase 1: minimize the sum of artificials.
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
    phase1.tail(m).setOnes();
    std::vector<bool> all(static_cast<size_t>(n + m), true);
    LpStatus st = tab.optimize(phase1, all, sol.pivots);
    if (st == LpStatus::IterationLimit) {
        sol.status = st;
        return sol;
    }
    double infeasibility = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (tab.basis()[static_cast<size_t>(i)] >= n) {
            infeasibility += tab.rhs(i);
        }
    }
    double scale = 1.0 + (sf.b.size() ? sf.b.cwiseAbs().maxCoeff() : 0.0);
    if (infeasibility > options.feasibility_tolerance * scale) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    tab.expel_artificials(sol.pivots);

    // Phase 2.
    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
    phase2.head(n) = sf.c;
    std::vector<bool> structural(static_cast<size_t>(n + m), false);
    for (Eigen::Index j = 0; j < n; ++j) {
        structural[static_cast<size_t>(j)] = true;
    }
    st = tab.optimize(phase2, structural, sol.pivots);
    if (st != LpStatus::Optimal) {
        sol.status = st;
        return sol;
    }

    // Recompute the vertex and multipliers from the final basis.
    std::vector<Eigen::Index> rows, cols;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (tab.active()[static_cast<size_t>(i)]) {
            rows.push_back(i);
            cols.push_back(tab.basis()[static_cast<size_t>(i)]);
        }
    }
    auto k = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd basis_matrix(k, k);
    Eigen::VectorXd b_red(k), c_b(k);
    for (Eigen::Index r = 0; r < k; ++r) {
        for (Eigen::Index c = 0; c < k; ++c) {
            basis_matrix(r, c) = sf.a(rows[static_cast<size_t>(r)], cols[static_cast<size_t>(c)]);
        }
        b_red(r) = sf.b(rows[static_cast<size_t>(r)]);
        c_b(r) = sf.c(cols[static_cast<size_t>(r)]);
    }
    Eigen::VectorXd xs = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd ys = Eigen::VectorXd::Zero(m);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (k > 0 && lu.isInvertible()) {
        Eigen::VectorXd xb = lu.solve(b_red);
        Eigen::VectorXd yb = lu.transpose().solve(c_b);
        for (Eigen::Index r = 0; r < k; ++r) {
            xs(cols[static_cast<size_t>(r)]) = std::max(0.0, xb(r));
            ys(rows[static_cast<size_t>(r)]) = yb(r);
        }
    } else {
        for (Eigen::Index r = 0; r < k; ++r) {
            xs(cols[static_cast<size_t>(r)]) = std::max(0.0, tab.rhs(rows[static_cast<size_t>(r)]));
        }
        for (Eigen::Index i = 0; i < m; ++i) {
            ys(i) = tab.multiplier(phase2, i);
        }
    }

    double obj_sign = lp.sense == Sense::Maximize ? -1.0 : 1.0;
    Eigen::Index nv = lp.num_vars();
    sol.x.resize(nv);
    for (Eigen::Index j = 0; j < nv; ++j) {
        double v = xs(sf.plus[static_cast<size_t>(j)]) + sf.shift(j);
        if (sf.minus[static_cast<size_t>(j)] >= 0) {
            v -= xs(sf.minus[static_cast<size_t>(j)]);
        }
        sol.x(j) = v;
    }
    // Multipliers of the stated problem: undo the row flips and the objective flip.
    sol.duals.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        sol.duals(i) = obj_sign * sf.row_sign[static_cast<size_t>(i)] * ys(i);
    }
    sol.value = lp.objective.dot(sol.x);
    sol.status = LpStatus::Optimal;

    // Primal residual.
    Eigen::VectorXd lower = lp.lower.size() ? lp.lower : Eigen::VectorXd::Zero(nv);
    Eigen::VectorXd ax = lp.constraints * sol.x;
    double pr = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
        double d = ax(i) - lp.bounds(i);
        switch (lp.relations[static_cast<size_t>(i)]) {
            case Relation::LessEqual:
                pr = std::max(pr, d);
                break;
            case Relation::GreaterEqual:
                pr = std::max(pr, -d);
                break;
            case Relation::Equal:
                pr = std::max(pr, std::abs(d));
                break;
        }
    }
    for (Eigen::Index j = 0; j < nv; ++j) {
        if (!std::isinf(lower(j))) {
            pr = std::max(pr, lower(j) - sol.x(j));
        }
    }
    sol.primal_residual = pr;

    // Dual feasibility and dual objective, written for the minimization of obj_sign * c.
    Eigen::VectorXd y_min = obj_sign * sol.duals;
    Eigen::VectorXd reduced = obj_sign * lp.objective - lp.constraints.transpose() * y_min;
    double dr = 0;
    double dual_obj = lp.bounds.dot(y_min);
    for (Eigen::Index i = 0; i < m; ++i) {
        switch (lp.relations[static_cast<size_t>(i)]) {
            case Relation::LessEqual:
                dr = std::max(dr, y_min(i));
                break;
            case Relation::GreaterEqual:
                dr = std::max(dr, -y_min(i));
                break;
            case Relation::Equal:
                break;
        }
    }
    for (Eigen::Index j = 0; j < nv; ++j) {
        if (std::isinf(lower(j))) {
            dr = std::max(dr, std::abs(reduced(j)));
        } else {
            dr = std::max(dr, -reduced(j));
            dual_obj += lower(j) * reduced(j);
        }
    }
    sol.dual_residual = dr;
    sol.dual_value = obj_sign * dual_obj;
    return sol;
}
