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

#ifndef CHANCMP_LINALG_H
#define CHANCMP_LINALG_H

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace chancmp {

using cdouble = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

CMat kron(const CMat &a, const CMat &b);

/// (M + M^dagger) / 2
CMat hermitian_part(const CMat &m);

/// max |M - M^dagger| entrywise <= tol
bool is_hermitian(const CMat &m, double tol = 1e-12);

struct Eigh {
    /// Ascending.
    Eigen::VectorXd values;
    CMat vectors;
};

/// Eigendecomposition of the Hermitian part of m.
Eigh eigh(const CMat &m);

double min_eigenvalue(const CMat &m);
double max_eigenvalue(const CMat &m);

/// Hermitian part with negative eigenvalues set to zero: the Frobenius projection onto the PSD cone.
CMat project_psd(const CMat &m);

/// Positive and negative parts of a Hermitian matrix, m = pos - neg with pos, neg >= 0 and pos neg = 0.
std::pair<CMat, CMat> jordan_split(const CMat &m);

/// Projector onto the span of eigenvectors with eigenvalue > threshold.
CMat positive_projector(const CMat &m, double threshold = 0);

CMat psd_sqrt(const CMat &m);

/// Inverse square root on the support (eigenvalues above cutoff), zero elsewhere.
CMat psd_inv_sqrt(const CMat &m, double cutoff = 1e-14);

/// Moore-Penrose pseudo-inverse of a Hermitian PSD matrix.
CMat psd_pinv(const CMat &m, double cutoff = 1e-14);

/// Sum of singular values.
double trace_norm(const CMat &m);

/// Largest singular value.
double operator_norm(const CMat &m);

/// Traces out every subsystem listed in `traced` from an operator on the ordered tensor product of
/// spaces of dimensions `dims`.
CMat partial_trace(const CMat &m, const std::vector<size_t> &dims, const std::vector<size_t> &traced);

/// Reorders tensor factors: factor k of the result is factor perm[k] of the input.
CMat permute_subsystems(const CMat &m, const std::vector<size_t> &dims, const std::vector<size_t> &perm);

/// Real orthonormal coordinates of Hermitian d x d matrices under the Hilbert-Schmidt inner product:
/// diagonal units E_kk, then (E_kl + E_lk)/sqrt2 and i(E_kl - E_lk)/sqrt2 for k < l.
Eigen::VectorXd hermitian_to_real(const CMat &m);
CMat real_to_hermitian(const Eigen::VectorXd &v, Eigen::Index d);

/// The d^2 basis operators behind hermitian_to_real.
std::vector<CMat> hermitian_basis(Eigen::Index d);

/// |k><l| in dimension d.
CMat matrix_unit(Eigen::Index d, Eigen::Index k, Eigen::Index l);

/// |psi><psi|
CMat projector(const CVec &psi);

}  // namespace chancmp

#endif
