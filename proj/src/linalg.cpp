// Copyright 2026 The qsl Authors
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

#include "qsl/linalg.hpp"

#include <atomic>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qsl {

namespace {

std::atomic<double> g_tolerance{1e-9};

std::vector<Index> strides_of(const std::vector<int> &dims) {
    std::vector<Index> s(dims.size());
    Index acc = 1;
    for (size_t k = dims.size(); k-- > 0;) {
        s[k] = acc;
        acc *= dims[k];
    }
    return s;
}

// Linear offsets of every multi-index over `positions` (first listed position
// most significant), using the strides of the full space.
std::vector<Index> offsets_over(const std::vector<int> &dims, const std::vector<Index> &strides,
                                const std::vector<int> &positions) {
    std::vector<Index> out{0};
    for (int p : positions) {
        std::vector<Index> next;
        next.reserve(out.size() * dims[p]);
        for (Index base : out) {
            for (int v = 0; v < dims[p]; v++) {
                next.push_back(base + v * strides[p]);
            }
        }
        out.swap(next);
    }
    return out;
}

struct Split {
    std::vector<Index> inner;
    std::vector<Index> outer;
};

Split split_indices(const std::vector<int> &dims, const std::vector<int> &targets) {
    auto st = strides_of(dims);
    std::vector<bool> used(dims.size(), false);
    for (int t : targets) {
        if (t < 0 || t >= (int)dims.size() || used[t]) {
            throw DomainError("bad or repeated tensor factor index " + std::to_string(t));
        }
        used[t] = true;
    }
    std::vector<int> rest;
    for (size_t k = 0; k < dims.size(); k++) {
        if (!used[k]) {
            rest.push_back((int)k);
        }
    }
    return Split{offsets_over(dims, st, targets), offsets_over(dims, st, rest)};
}

}  // namespace

double tolerance() {
    return g_tolerance.load();
}

void set_tolerance(double tol) {
    if (!(tol > 0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    g_tolerance.store(tol);
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); i++) {
        for (Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Index total_dim(const std::vector<int> &dims) {
    Index d = 1;
    for (int x : dims) {
        d *= x;
    }
    return d;
}

Matrix apply_left(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &targets, const Matrix &op) {
    Split sp = split_indices(dims, targets);
    Index k = (Index)sp.inner.size();
    if (op.rows() != k || op.cols() != k) {
        throw DomainError("operator size does not match target factors");
    }
    if (m.rows() != total_dim(dims)) {
        throw DomainError("matrix size does not match dimension list");
    }
    Matrix out(m.rows(), m.cols());
    std::vector<cplx> tmp(k);
    for (Index c = 0; c < m.cols(); c++) {
        const cplx *src = m.col(c).data();
        cplx *dst = out.col(c).data();
        for (Index base : sp.outer) {
            for (Index j = 0; j < k; j++) {
                tmp[j] = src[base + sp.inner[j]];
            }
            for (Index i = 0; i < k; i++) {
                cplx acc = 0;
                for (Index j = 0; j < k; j++) {
                    acc += op(i, j) * tmp[j];
                }
                dst[base + sp.inner[i]] = acc;
            }
        }
    }
    return out;
}

Matrix sandwich(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &targets, const Matrix &op) {
    Split sp = split_indices(dims, targets);
    Index k = (Index)sp.inner.size();
    if (op.rows() != k || op.cols() != k) {
        throw DomainError("operator size does not match target factors");
    }
    if (m.rows() != total_dim(dims) || m.cols() != m.rows()) {
        throw DomainError("matrix size does not match dimension list");
    }
    // one k x k block at a time: out_block = op * block * op^dagger, with
    // the nonzero entries of op listed per row (projectors and resets are sparse)
    std::vector<std::vector<std::pair<Index, cplx>>> rows(k);
    for (Index i = 0; i < k; i++) {
        for (Index l = 0; l < k; l++) {
            if (op(i, l) != cplx(0)) {
                rows[i].push_back({l, op(i, l)});
            }
        }
    }
    Matrix out(m.rows(), m.cols());
    std::vector<cplx> blk(k * k), half(k * k);
    const auto &in = sp.inner;
    for (Index bc : sp.outer) {
        for (Index br : sp.outer) {
            for (Index j = 0; j < k; j++) {
                const cplx *src = m.col(bc + in[j]).data() + br;
                for (Index i = 0; i < k; i++) {
                    blk[i + j * k] = src[in[i]];
                }
            }
            for (Index j = 0; j < k; j++) {
                for (Index i = 0; i < k; i++) {
                    cplx acc = 0;
                    for (const auto &[l, w] : rows[i]) {
                        acc += w * blk[l + j * k];
                    }
                    half[i + j * k] = acc;
                }
            }
            for (Index j = 0; j < k; j++) {
                cplx *dst = out.col(bc + in[j]).data() + br;
                for (Index i = 0; i < k; i++) {
                    cplx acc = 0;
                    for (const auto &[l, w] : rows[j]) {
                        acc += half[i + l * k] * std::conj(w);
                    }
                    dst[in[i]] = acc;
                }
            }
        }
    }
    return out;
}

Matrix embed(const Matrix &op, const std::vector<int> &dims, const std::vector<int> &targets) {
    Index d = total_dim(dims);
    return apply_left(Matrix::Identity(d, d), dims, targets, op);
}

Matrix partial_trace(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &keep) {
    if (m.rows() != total_dim(dims) || m.cols() != m.rows()) {
        throw DomainError("partial trace of a matrix with the wrong size");
    }
    Split sp = split_indices(dims, keep);
    Index k = (Index)sp.inner.size();
    Matrix out = Matrix::Zero(k, k);
    for (Index o : sp.outer) {
        for (Index j = 0; j < k; j++) {
            for (Index i = 0; i < k; i++) {
                out(i, j) += m(o + sp.inner[i], o + sp.inner[j]);
            }
        }
    }
    return out;
}

Matrix permute_factors(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &perm) {
    if (perm.size() != dims.size()) {
        throw DomainError("permutation length mismatch");
    }
    Split sp = split_indices(dims, perm);
    const auto &map = sp.inner;
    Index d = (Index)map.size();
    Matrix out(d, d);
    for (Index j = 0; j < d; j++) {
        for (Index i = 0; i < d; i++) {
            out(i, j) = m(map[i], map[j]);
        }
    }
    return out;
}

Matrix permute_rows(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &perm) {
    if (perm.size() != dims.size()) {
        throw DomainError("permutation length mismatch");
    }
    Split sp = split_indices(dims, perm);
    Matrix out(m.rows(), m.cols());
    for (Index i = 0; i < (Index)sp.inner.size(); i++) {
        out.row(i) = m.row(sp.inner[i]);
    }
    return out;
}

Matrix hermitian_part(const Matrix &m) {
    return (m + m.adjoint()) * 0.5;
}

bool is_hermitian(const Matrix &m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol;
}

bool is_unitary(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

bool is_projector(const Matrix &m, double tol) {
    return is_hermitian(m, tol) && (m * m - m).norm() <= tol;
}

bool loewner_leq(const Matrix &a, const Matrix &b, double tol) {
    Matrix diff = hermitian_part(b - a);
    if (diff.rows() == 0) {
        return true;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

Matrix spectral_power(const Matrix &u, double a) {
    Eigen::ComplexSchur<Matrix> schur(u);
    const Matrix &t = schur.matrixT();
    const Matrix &q = schur.matrixU();
    Vector phases(t.rows());
    for (Index i = 0; i < t.rows(); i++) {
        double k = std::arg(t(i, i)) / M_PI;
        if (k <= -1 + 1e-12) {
            k += 2;
        }
        phases(i) = std::polar(1.0, M_PI * a * k);
    }
    return q * phases.asDiagonal() * q.adjoint();
}

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
}

Subspace Subspace::zero(Index dim) {
    return Subspace(Matrix(dim, 0));
}

Subspace Subspace::full(Index dim) {
    return Subspace(Matrix::Identity(dim, dim));
}

Subspace Subspace::span(const Matrix &vectors) {
    if (vectors.cols() == 0) {
        return zero(vectors.rows());
    }
    Eigen::JacobiSVD<Matrix> svd(vectors, Eigen::ComputeThinU);
    double cut = std::sqrt(tolerance());
    Index r = 0;
    while (r < svd.singularValues().size() && svd.singularValues()(r) > cut) {
        r++;
    }
    return Subspace(svd.matrixU().leftCols(r));
}

Subspace Subspace::support(const Matrix &herm) {
    if (herm.rows() == 0) {
        return zero(0);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(herm));
    std::vector<Index> keep;
    for (Index i = 0; i < es.eigenvalues().size(); i++) {
        if (es.eigenvalues()(i) > tolerance()) {
            keep.push_back(i);
        }
    }
    Matrix b(herm.rows(), (Index)keep.size());
    for (size_t c = 0; c < keep.size(); c++) {
        b.col(c) = es.eigenvectors().col(keep[c]);
    }
    return Subspace(b);
}

Subspace Subspace::eigenspace_one(const Matrix &herm) {
    if (herm.rows() == 0) {
        return zero(0);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(herm));
    std::vector<Index> keep;
    for (Index i = 0; i < es.eigenvalues().size(); i++) {
        if (std::abs(es.eigenvalues()(i) - 1.0) <= tolerance()) {
            keep.push_back(i);
        }
    }
    Matrix b(herm.rows(), (Index)keep.size());
    for (size_t c = 0; c < keep.size(); c++) {
        b.col(c) = es.eigenvectors().col(keep[c]);
    }
    return Subspace(b);
}

Subspace Subspace::of_projector(const Matrix &p) {
    return eigenspace_one(p);
}

Matrix Subspace::projector() const {
    return basis_ * basis_.adjoint();
}

bool Subspace::contains(const Subspace &other) const {
    if (other.dim() != dim()) {
        throw DomainError("subspaces of different ambient dimension");
    }
    if (other.rank() == 0) {
        return true;
    }
    Matrix residual = other.basis_ - basis_ * (basis_.adjoint() * other.basis_);
    return residual.norm() <= tolerance();
}

bool Subspace::contains_vector(const Vector &v) const {
    Vector residual = v - basis_ * (basis_.adjoint() * v);
    return residual.norm() <= tolerance() * std::max(1.0, v.norm());
}

bool Subspace::equals(const Subspace &other) const {
    if (other.dim() != dim()) {
        return false;
    }
    if (rank() != other.rank()) {
        return false;
    }
    return (projector() - other.projector()).norm() <= tolerance();
}

Subspace Subspace::ortho() const {
    Index d = dim();
    if (rank() == 0) {
        return full(d);
    }
    Eigen::HouseholderQR<Matrix> qr(basis_);
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    return Subspace(q.rightCols(d - rank()));
}

Subspace Subspace::meet(const Subspace &other) const {
    if (other.dim() != dim()) {
        throw DomainError("subspaces of different ambient dimension");
    }
    if (rank() == 0 || other.rank() == 0) {
        return zero(dim());
    }
    // Compress the other projector into this subspace; its eigenvalue-one
    // eigenvectors are exactly the common vectors.
    Matrix overlap = other.basis_.adjoint() * basis_;
    Matrix compressed = overlap.adjoint() * overlap;
    Subspace inner = eigenspace_one(compressed);
    return span(basis_ * inner.basis());
}

Subspace Subspace::join(const Subspace &other) const {
    if (other.dim() != dim()) {
        throw DomainError("subspaces of different ambient dimension");
    }
    Matrix both(dim(), rank() + other.rank());
    both << basis_, other.basis_;
    return span(both);
}

}  // namespace qsl
