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

#include "chancmp/linalg.h"

#include <cmath>
#include <numeric>

#include "chancmp/errors.h"

using namespace chancmp;

CMat chancmp::kron(const CMat &a, const CMat &b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMat chancmp::hermitian_part(const CMat &m) {
    return 0.5 * (m + m.adjoint());
}

bool chancmp::is_hermitian(const CMat &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return m.size() == 0 || (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigh chancmp::eigh(const CMat &m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m));
    return {es.eigenvalues(), es.eigenvectors()};
}

double chancmp::min_eigenvalue(const CMat &m) {
    return eigh(m).values.minCoeff();
}

double chancmp::max_eigenvalue(const CMat &m) {
    return eigh(m).values.maxCoeff();
}

namespace {

template <typename F>
CMat spectral_apply(const CMat &m, F f) {
    Eigh e = eigh(m);
    Eigen::VectorXd fv = e.values.unaryExpr(f);
    return e.vectors * fv.asDiagonal() * e.vectors.adjoint();
}

}  // namespace

CMat chancmp::project_psd(const CMat &m) {
    return spectral_apply(m, [](double x) { return std::max(x, 0.0); });
}

std::pair<CMat, CMat> chancmp::jordan_split(const CMat &m) {
    CMat pos = spectral_apply(m, [](double x) { return std::max(x, 0.0); });
    CMat neg = spectral_apply(m, [](double x) { return std::max(-x, 0.0); });
    return {pos, neg};
}

CMat chancmp::positive_projector(const CMat &m, double threshold) {
    return spectral_apply(m, [threshold](double x) { return x > threshold ? 1.0 : 0.0; });
}

CMat chancmp::psd_sqrt(const CMat &m) {
    return spectral_apply(m, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

CMat chancmp::psd_inv_sqrt(const CMat &m, double cutoff) {
    return spectral_apply(m, [cutoff](double x) { return x > cutoff ? 1.0 / std::sqrt(x) : 0.0; });
}

CMat chancmp::psd_pinv(const CMat &m, double cutoff) {
    return spectral_apply(m, [cutoff](double x) { return x > cutoff ? 1.0 / x : 0.0; });
}

double chancmp::trace_norm(const CMat &m) {
    if (is_hermitian(m, 1e-13)) {
        return eigh(m).values.cwiseAbs().sum();
    }
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues().sum();
}

double chancmp::operator_norm(const CMat &m) {
    if (m.size() == 0) {
        return 0;
    }
    if (is_hermitian(m, 1e-13)) {
        return eigh(m).values.cwiseAbs().maxCoeff();
    }
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

namespace {

size_t product(const std::vector<size_t> &dims) {
    return std::accumulate(dims.begin(), dims.end(), size_t{1}, std::multiplies<>());
}

std::vector<size_t> strides(const std::vector<size_t> &dims) {
    std::vector<size_t> s(dims.size(), 1);
    for (size_t k = dims.size(); k-- > 1;) {
        s[k - 1] = s[k] * dims[k];
    }
    return s;
}

void check_layout(const CMat &m, const std::vector<size_t> &dims, const char *where) {
    auto n = static_cast<Eigen::Index>(product(dims));
    if (m.rows() != n || m.cols() != n) {
        throw DimensionMismatch(std::string(where) + ": matrix size does not match the subsystem layout");
    }
}

}  // namespace

CMat chancmp::partial_trace(const CMat &m, const std::vector<size_t> &dims, const std::vector<size_t> &traced) {
    check_layout(m, dims, "partial_trace");
    std::vector<bool> is_traced(dims.size(), false);
    for (size_t t : traced) {
        if (t >= dims.size()) {
            throw DimensionMismatch("partial_trace: subsystem index out of range");
        }
        is_traced[t] = true;
    }
    std::vector<size_t> kept_dims;
    std::vector<size_t> traced_dims;
    for (size_t k = 0; k < dims.size(); ++k) {
        (is_traced[k] ? traced_dims : kept_dims).push_back(dims[k]);
    }
    size_t nk = product(kept_dims);
    size_t nt = product(traced_dims);
    auto full_strides = strides(dims);

    // Full index of (kept multi-index a, traced multi-index t).
    auto compose_index = [&](size_t a, size_t t) {
        size_t idx = 0;
        for (size_t k = dims.size(); k-- > 0;) {
            size_t digit;
            if (is_traced[k]) {
                digit = t % dims[k];
                t /= dims[k];
            } else {
                digit = a % dims[k];
                a /= dims[k];
            }
            idx += digit * full_strides[k];
        }
        return static_cast<Eigen::Index>(idx);
    };

    std::vector<Eigen::Index> table(nk * nt);
    for (size_t a = 0; a < nk; ++a) {
        for (size_t t = 0; t < nt; ++t) {
            table[a * nt + t] = compose_index(a, t);
        }
    }
    CMat out = CMat::Zero(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk));
    for (size_t a = 0; a < nk; ++a) {
        for (size_t b = 0; b < nk; ++b) {
            cdouble acc = 0;
            for (size_t t = 0; t < nt; ++t) {
                acc += m(table[a * nt + t], table[b * nt + t]);
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
        }
    }
    return out;
}

CMat chancmp::permute_subsystems(const CMat &m, const std::vector<size_t> &dims, const std::vector<size_t> &perm) {
    check_layout(m, dims, "permute_subsystems");
    if (perm.size() != dims.size()) {
        throw DimensionMismatch("permute_subsystems: permutation length differs from subsystem count");
    }
    std::vector<size_t> new_dims(dims.size());
    for (size_t k = 0; k < perm.size(); ++k) {
        new_dims[k] = dims.at(perm[k]);
    }
    auto old_strides = strides(dims);
    size_t n = product(dims);
    // map[new index] = old index
    std::vector<Eigen::Index> map(n);
    for (size_t idx = 0; idx < n; ++idx) {
        size_t rem = idx;
        size_t old = 0;
        for (size_t k = new_dims.size(); k-- > 0;) {
            size_t digit = rem % new_dims[k];
            rem /= new_dims[k];
            old += digit * old_strides[perm[k]];
        }
        map[idx] = static_cast<Eigen::Index>(old);
    }
    CMat out(m.rows(), m.cols());
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(map[i], map[j]);
        }
    }
    return out;
}

Eigen::VectorXd chancmp::hermitian_to_real(const CMat &m) {
    Eigen::Index d = m.rows();
    Eigen::VectorXd v(d * d);
    const double r2 = std::sqrt(2.0);
    Eigen::Index n = 0;
    for (Eigen::Index k = 0; k < d; ++k) {
        v(n++) = m(k, k).real();
    }
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = k + 1; l < d; ++l) {
            // Average the two triangles so non-Hermitian noise projects away.
            cdouble z = 0.5 * (m(k, l) + std::conj(m(l, k)));
            v(n++) = r2 * z.real();
            v(n++) = r2 * z.imag();
        }
    }
    return v;
}

CMat chancmp::real_to_hermitian(const Eigen::VectorXd &v, Eigen::Index d) {
    if (v.size() != d * d) {
        throw DimensionMismatch("real_to_hermitian: coordinate count must be d^2");
    }
    CMat m = CMat::Zero(d, d);
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Index n = 0;
    for (Eigen::Index k = 0; k < d; ++k) {
        m(k, k) = v(n++);
    }
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = k + 1; l < d; ++l) {
            double re = v(n++);
            double im = v(n++);
            // re (E_kl + E_lk)/sqrt2 + im i(E_kl - E_lk)/sqrt2
            m(k, l) = s * cdouble(re, im);
            m(l, k) = s * cdouble(re, -im);
        }
    }
    return m;
}

std::vector<CMat> chancmp::hermitian_basis(Eigen::Index d) {
    std::vector<CMat> basis;
    for (Eigen::Index i = 0; i < d * d; ++i) {
        basis.push_back(real_to_hermitian(Eigen::VectorXd::Unit(d * d, i), d));
    }
    return basis;
}

CMat chancmp::matrix_unit(Eigen::Index d, Eigen::Index k, Eigen::Index l) {
    CMat m = CMat::Zero(d, d);
    m(k, l) = 1;
    return m;
}

CMat chancmp::projector(const CVec &psi) {
    return psi * psi.adjoint();
}
