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

#include "chancmp/quantum_core.h"

#include <cmath>
#include <random>
#include <sstream>

#include "chancmp/errors.h"

using namespace chancmp;

namespace {

std::string fmt(double x) {
    std::stringstream ss;
    ss.precision(3);
    ss << x;
    return ss.str();
}

void require_square(const CMat &m, const char *where) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionMismatch(std::string(where) + ": expected a nonempty square matrix");
    }
}

CMat ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    CMat g(rows, cols);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        double re = normal(rng);
        double im = normal(rng);
        g(i) = cdouble(re, im);
    }
    return g;
}

}  // namespace

HermitianOperator::HermitianOperator(CMat m) {
    require_square(m, "HermitianOperator");
    if (!is_hermitian(m, kHermitianTolerance)) {
        throw InvariantViolation("HermitianOperator: matrix is not Hermitian");
    }
    m_ = hermitian_part(m);
}

DensityOperator::DensityOperator(CMat m) {
    require_square(m, "DensityOperator");
    if (!is_hermitian(m, kPsdTolerance)) {
        throw InvariantViolation("DensityOperator: matrix is not Hermitian");
    }
    m_ = hermitian_part(m);
    double tr = m_.trace().real();
    if (std::abs(tr - 1) > kTraceTolerance) {
        throw InvariantViolation("DensityOperator: trace " + fmt(tr) + " is not 1");
    }
    double lo = min_eigenvalue(m_);
    if (lo < -kPsdTolerance) {
        throw InvariantViolation("DensityOperator: negative eigenvalue " + fmt(lo));
    }
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index d) {
    return DensityOperator(CMat::Identity(d, d) / static_cast<double>(d));
}

DensityOperator DensityOperator::pure(const CVec &psi) {
    return DensityOperator(projector(psi.normalized()));
}

DensityOperator DensityOperator::basis(Eigen::Index d, Eigen::Index k) {
    return DensityOperator(matrix_unit(d, k, k));
}

Povm::Povm(std::vector<CMat> elements) {
    if (elements.empty()) {
        throw InvariantViolation("Povm: no elements");
    }
    Eigen::Index d = elements.front().rows();
    CMat total = CMat::Zero(d, d);
    for (auto &e : elements) {
        require_square(e, "Povm");
        if (e.rows() != d) {
            throw DimensionMismatch("Povm: elements of different dimension");
        }
        if (!is_hermitian(e, kPsdTolerance)) {
            throw InvariantViolation("Povm: element is not Hermitian");
        }
        e = hermitian_part(e);
        double lo = min_eigenvalue(e);
        if (lo < -kPsdTolerance) {
            throw InvariantViolation("Povm: element has negative eigenvalue " + fmt(lo));
        }
        total += e;
    }
    double dev = (total - CMat::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > kPovmTolerance) {
        throw InvariantViolation("Povm: elements sum to the identity only within " + fmt(dev));
    }
    elements_ = std::move(elements);
}

Povm Povm::computational_basis(Eigen::Index d) {
    std::vector<CMat> e;
    for (Eigen::Index k = 0; k < d; ++k) {
        e.push_back(matrix_unit(d, k, k));
    }
    return Povm(std::move(e));
}

Eigen::VectorXd Povm::probabilities(const CMat &rho) const {
    Eigen::VectorXd p(static_cast<Eigen::Index>(elements_.size()));
    for (size_t u = 0; u < elements_.size(); ++u) {
        p(static_cast<Eigen::Index>(u)) = (elements_[u] * rho).trace().real();
    }
    return p;
}

CMat chancmp::choi_of_map(Eigen::Index d_in, Eigen::Index d_out, const std::function<CMat(const CMat &)> &map) {
    CMat choi(d_in * d_out, d_in * d_out);
    for (Eigen::Index i = 0; i < d_in; ++i) {
        for (Eigen::Index j = 0; j < d_in; ++j) {
            CMat out = map(matrix_unit(d_in, i, j));
            if (out.rows() != d_out || out.cols() != d_out) {
                throw DimensionMismatch("choi_of_map: map output has the wrong dimension");
            }
            choi.block(i * d_out, j * d_out, d_out, d_out) = out / static_cast<double>(d_in);
        }
    }
    return choi;
}

CMat chancmp::apply_choi(const CMat &choi, Eigen::Index d_in, Eigen::Index d_out, const CMat &x) {
    if (x.rows() != d_in || x.cols() != d_in) {
        throw DimensionMismatch("apply: input dimension does not match the channel");
    }
    CMat out = CMat::Zero(d_out, d_out);
    for (Eigen::Index i = 0; i < d_in; ++i) {
        for (Eigen::Index j = 0; j < d_in; ++j) {
            if (x(i, j) != cdouble(0)) {
                out += x(i, j) * choi.block(i * d_out, j * d_out, d_out, d_out);
            }
        }
    }
    return static_cast<double>(d_in) * out;
}

QuantumChannel::QuantumChannel(CMat choi, Eigen::Index d_in, Eigen::Index d_out) : d_in_(d_in), d_out_(d_out) {
    if (d_in < 1 || d_out < 1 || choi.rows() != d_in * d_out || choi.cols() != d_in * d_out) {
        throw DimensionMismatch("QuantumChannel: Choi operator size must be d_in * d_out");
    }
    if (!is_hermitian(choi, kPsdTolerance)) {
        throw InvariantViolation("QuantumChannel: Choi operator is not Hermitian");
    }
    choi_ = hermitian_part(choi);
    double lo = min_eigenvalue(choi_);
    if (lo < -kPsdTolerance) {
        throw InvariantViolation("QuantumChannel: not completely positive (Choi eigenvalue " + fmt(lo) + ")");
    }
    CMat marginal = partial_trace(choi_, {static_cast<size_t>(d_in), static_cast<size_t>(d_out)}, {1});
    double dev = (marginal - CMat::Identity(d_in, d_in) / static_cast<double>(d_in)).cwiseAbs().maxCoeff();
    if (dev > kChannelTolerance) {
        throw InvariantViolation("QuantumChannel: not trace preserving (deviation " + fmt(dev) + ")");
    }
}

QuantumChannel QuantumChannel::from_map(Eigen::Index d_in, Eigen::Index d_out, const std::function<CMat(const CMat &)> &map) {
    return QuantumChannel(choi_of_map(d_in, d_out, map), d_in, d_out);
}

QuantumChannel QuantumChannel::from_kraus(const std::vector<CMat> &kraus) {
    if (kraus.empty()) {
        throw InvariantViolation("from_kraus: no Kraus operators");
    }
    Eigen::Index d_in = kraus.front().cols();
    Eigen::Index d_out = kraus.front().rows();
    for (const auto &k : kraus) {
        if (k.cols() != d_in || k.rows() != d_out) {
            throw DimensionMismatch("from_kraus: Kraus operators of different shapes");
        }
    }
    return from_map(d_in, d_out, [&](const CMat &x) {
        CMat out = CMat::Zero(d_out, d_out);
        for (const auto &k : kraus) {
            out += k * x * k.adjoint();
        }
        return out;
    });
}

QuantumChannel QuantumChannel::identity(Eigen::Index d) {
    return from_map(d, d, [](const CMat &x) { return x; });
}

QuantumChannel QuantumChannel::depolarizing(Eigen::Index d, double t) {
    return from_map(d, d, [d, t](const CMat &x) {
        return CMat(t * x + (1 - t) * x.trace() * CMat::Identity(d, d) / static_cast<double>(d));
    });
}

QuantumChannel QuantumChannel::dephasing(Eigen::Index d, double strength) {
    return from_map(d, d, [strength](const CMat &x) {
        CMat out = (1 - strength) * x;
        out.diagonal() = x.diagonal();
        return out;
    });
}

QuantumChannel QuantumChannel::constant(Eigen::Index d_in, const DensityOperator &sigma) {
    return from_map(d_in, sigma.dim(), [&](const CMat &x) { return CMat(x.trace() * sigma.matrix()); });
}

QuantumChannel QuantumChannel::unitary(const CMat &u) {
    require_square(u, "QuantumChannel::unitary");
    return from_kraus({u});
}

QuantumChannel QuantumChannel::measure_prepare(const Povm &povm, const std::vector<DensityOperator> &states) {
    if (states.size() != povm.size()) {
        throw DimensionMismatch("measure_prepare: one state per POVM outcome is required");
    }
    Eigen::Index d_out = states.front().dim();
    for (const auto &s : states) {
        if (s.dim() != d_out) {
            throw DimensionMismatch("measure_prepare: prepared states of different dimension");
        }
    }
    return from_map(povm.dim(), d_out, [&](const CMat &x) {
        CMat out = CMat::Zero(d_out, d_out);
        for (size_t u = 0; u < povm.size(); ++u) {
            out += (povm[u] * x).trace() * states[u].matrix();
        }
        return out;
    });
}

QuantumChannel QuantumChannel::basis_measurement(Eigen::Index d) {
    std::vector<DensityOperator> states;
    for (Eigen::Index k = 0; k < d; ++k) {
        states.push_back(DensityOperator::basis(d, k));
    }
    return measure_prepare(Povm::computational_basis(d), states);
}

QuantumChannel QuantumChannel::random(Eigen::Index d_in, Eigen::Index d_out, Eigen::Index kraus_rank, unsigned long long seed) {
    if (kraus_rank < 1) {
        throw InvariantViolation("QuantumChannel::random: Kraus rank must be positive");
    }
    if (d_out * kraus_rank < d_in) {
        throw InvariantViolation("QuantumChannel::random: d_out * kraus_rank must be at least d_in");
    }
    std::mt19937_64 rng(seed);
    CMat g = ginibre(d_out * kraus_rank, d_in, rng);
    CMat v = g * psd_inv_sqrt(g.adjoint() * g);
    std::vector<CMat> kraus;
    for (Eigen::Index k = 0; k < kraus_rank; ++k) {
        kraus.push_back(v.block(k * d_out, 0, d_out, d_in));
    }
    return from_kraus(kraus);
}

CMat QuantumChannel::apply(const CMat &x) const {
    return apply_choi(choi_, d_in_, d_out_, x);
}

CMat QuantumChannel::apply_dual(const CMat &y) const {
    if (y.rows() != d_out_ || y.cols() != d_out_) {
        throw DimensionMismatch("apply_dual: operator dimension does not match the channel output");
    }
    CMat out(d_in_, d_in_);
    for (Eigen::Index i = 0; i < d_in_; ++i) {
        for (Eigen::Index j = 0; j < d_in_; ++j) {
            out(j, i) = static_cast<double>(d_in_) * (choi_.block(i * d_out_, j * d_out_, d_out_, d_out_) * y).trace();
        }
    }
    return out;
}

DensityOperator chancmp::apply_channel(const QuantumChannel &phi, const DensityOperator &rho) {
    return DensityOperator(phi.apply(rho.matrix()));
}

QuantumChannel chancmp::compose_quantum(const QuantumChannel &psi, const QuantumChannel &phi) {
    if (psi.d_in() != phi.d_out()) {
        throw DimensionMismatch("compose_quantum: output of the first channel does not feed the second");
    }
    return QuantumChannel::from_map(phi.d_in(), psi.d_out(), [&](const CMat &x) { return psi.apply(phi.apply(x)); });
}

CMat chancmp::apply_extended(const QuantumChannel &phi, Eigen::Index d_aux, const CMat &x) {
    Eigen::Index di = phi.d_in();
    Eigen::Index dout = phi.d_out();
    if (x.rows() != d_aux * di || x.cols() != d_aux * di) {
        throw DimensionMismatch("apply_extended: input dimension does not match aux (x) in");
    }
    CMat out(d_aux * dout, d_aux * dout);
    for (Eigen::Index k = 0; k < d_aux; ++k) {
        for (Eigen::Index l = 0; l < d_aux; ++l) {
            out.block(k * dout, l * dout, dout, dout) = phi.apply(x.block(k * di, l * di, di, di));
        }
    }
    return out;
}

CMat chancmp::apply_extended_dual(const QuantumChannel &phi, Eigen::Index d_aux, const CMat &y) {
    Eigen::Index di = phi.d_in();
    Eigen::Index dout = phi.d_out();
    if (y.rows() != d_aux * dout || y.cols() != d_aux * dout) {
        throw DimensionMismatch("apply_extended_dual: operator dimension does not match aux (x) out");
    }
    CMat out(d_aux * di, d_aux * di);
    for (Eigen::Index k = 0; k < d_aux; ++k) {
        for (Eigen::Index l = 0; l < d_aux; ++l) {
            out.block(k * di, l * di, di, di) = phi.apply_dual(y.block(k * dout, l * dout, dout, dout));
        }
    }
    return out;
}

QuantumChannel chancmp::extend_with_identity(const QuantumChannel &phi, Eigen::Index d_aux) {
    if (d_aux < 1) {
        throw InvariantViolation("extend_with_identity: auxiliary dimension must be positive");
    }
    if (d_aux == 1) {
        return phi;
    }
    return QuantumChannel::from_map(
        d_aux * phi.d_in(), d_aux * phi.d_out(), [&](const CMat &x) { return apply_extended(phi, d_aux, x); });
}

CMat chancmp::trace_dual_apply(const QuantumChannel &phi, const HermitianOperator &y) {
    return hermitian_part(phi.apply_dual(y.matrix()));
}

DensityOperator chancmp::maximally_entangled(Eigen::Index d) {
    CVec psi = CVec::Zero(d * d);
    for (Eigen::Index k = 0; k < d; ++k) {
        psi(k * d + k) = 1;
    }
    return DensityOperator::pure(psi);
}

CMat chancmp::weyl_shift(Eigen::Index d) {
    CMat x = CMat::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        x((k + 1) % d, k) = 1;
    }
    return x;
}

CMat chancmp::weyl_clock(Eigen::Index d) {
    CMat z = CMat::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        z(k, k) = std::polar(1.0, 2 * M_PI * static_cast<double>(k) / static_cast<double>(d));
    }
    return z;
}

BellToolkit chancmp::bell_toolkit(Eigen::Index d) {
    if (d < 2) {
        throw InvariantViolation("bell_toolkit: dimension must be at least 2");
    }
    CMat x = weyl_shift(d);
    CMat z = weyl_clock(d);
    CMat phi = maximally_entangled(d).matrix();
    CMat id = CMat::Identity(d, d);
    std::vector<CMat> projectors;
    std::vector<CMat> corrections;
    CMat xm = id;
    for (Eigen::Index m = 0; m < d; ++m) {
        CMat zn = id;
        for (Eigen::Index n = 0; n < d; ++n) {
            CMat u = xm * zn;
            CMat big = kron(id, u);
            projectors.push_back(big * phi * big.adjoint());
            corrections.push_back(u);
            zn = zn * z;
        }
        xm = xm * x;
    }
    return BellToolkit{d, Povm(std::move(projectors)), std::move(corrections)};
}

CMat DualFrame::reconstruct(const Eigen::VectorXd &probabilities) const {
    if (static_cast<size_t>(probabilities.size()) != operators.size()) {
        throw DimensionMismatch("DualFrame::reconstruct: one probability per frame operator is required");
    }
    CMat out = CMat::Zero(operators.front().rows(), operators.front().cols());
    for (size_t y = 0; y < operators.size(); ++y) {
        out += probabilities(static_cast<Eigen::Index>(y)) * operators[y];
    }
    return out;
}

InformationallyComplete chancmp::ic_povm_with_dual(Eigen::Index d) {
    if (d < 2) {
        throw InvariantViolation("ic_povm_with_dual: dimension must be at least 2");
    }
    std::vector<CMat> elements;
    if (d == 2) {
        CMat sx(2, 2), sy(2, 2), sz(2, 2);
        sx << 0, 1, 1, 0;
        sy << 0, cdouble(0, -1), cdouble(0, 1), 0;
        sz << 1, 0, 0, -1;
        const double s = 1 / std::sqrt(3.0);
        const double r[4][3] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
        for (const auto &v : r) {
            elements.push_back((CMat::Identity(2, 2) + v[0] * sx + v[1] * sy + v[2] * sz) / 4.0);
        }
    } else {
        std::vector<CMat> raw;
        const double s = 1 / std::sqrt(2.0);
        for (Eigen::Index k = 0; k < d; ++k) {
            raw.push_back(matrix_unit(d, k, k));
        }
        for (Eigen::Index k = 0; k < d; ++k) {
            for (Eigen::Index l = k + 1; l < d; ++l) {
                CVec a = CVec::Zero(d);
                a(k) = s;
                a(l) = s;
                raw.push_back(projector(a));
                CVec b = CVec::Zero(d);
                b(k) = s;
                b(l) = cdouble(0, s);
                raw.push_back(projector(b));
            }
        }
        CMat total = CMat::Zero(d, d);
        for (const auto &p : raw) {
            total += p;
        }
        CMat shape = psd_inv_sqrt(total);
        for (const auto &p : raw) {
            elements.push_back(shape * p * shape);
        }
    }

    // Rows of A are the real coordinates of Q^y, so Tr[Q^y X] = (A x)_y and the dual rows are A^{-T}.
    Eigen::Index n = d * d;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index y = 0; y < n; ++y) {
        a.row(y) = hermitian_to_real(elements[static_cast<size_t>(y)]).transpose();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) {
        throw std::logic_error("ic_povm_with_dual: POVM is not informationally complete");
    }
    Eigen::MatrixXd dual_rows = lu.inverse().transpose();
    DualFrame dual;
    for (Eigen::Index y = 0; y < n; ++y) {
        dual.operators.push_back(real_to_hermitian(dual_rows.row(y).transpose(), d));
    }
    return InformationallyComplete{Povm(std::move(elements)), std::move(dual)};
}

std::vector<CMat> ShiftedPovm::recover_tuple() const {
    auto n = static_cast<double>(povm.size());
    Eigen::Index d = povm.dim();
    std::vector<CMat> out;
    for (const auto &e : povm.elements()) {
        out.push_back(alpha * n * e - alpha * CMat::Identity(d, d) + sigma / n);
    }
    return out;
}

ShiftedPovm chancmp::hermitian_tuple_to_povm(const std::vector<HermitianOperator> &tuple) {
    if (tuple.empty()) {
        throw InvariantViolation("hermitian_tuple_to_povm: empty tuple");
    }
    Eigen::Index d = tuple.front().dim();
    CMat sigma = CMat::Zero(d, d);
    for (const auto &o : tuple) {
        if (o.dim() != d) {
            throw DimensionMismatch("hermitian_tuple_to_povm: operators of different dimension");
        }
        sigma += o.matrix();
    }
    auto n = static_cast<double>(tuple.size());
    double alpha = 0;
    for (const auto &o : tuple) {
        alpha = std::max(alpha, -min_eigenvalue(o.matrix() - sigma / n));
    }
    alpha += 1e-6;
    std::vector<CMat> elements;
    CMat id = CMat::Identity(d, d);
    for (const auto &o : tuple) {
        elements.push_back((o.matrix() + alpha * id - sigma / n) / (alpha * n));
    }
    return ShiftedPovm{Povm(std::move(elements)), alpha, sigma};
}

CMat chancmp::random_unitary(Eigen::Index d, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    CMat g = ginibre(d, d, rng);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
        cdouble ph = r(k, k) / std::abs(r(k, k));
        q.col(k) *= ph;
    }
    return q;
}

DensityOperator chancmp::random_state(Eigen::Index d, unsigned long long seed, Eigen::Index rank) {
    std::mt19937_64 rng(seed);
    CMat g = ginibre(d, rank, rng);
    CMat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityOperator(rho);
}
