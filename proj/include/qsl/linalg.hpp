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

#pragma once

#include <vector>

#include "qsl/common.hpp"

namespace qsl {

// Tensor-factor kernels. A composite space is described by a list of local
// dimensions; the first factor is the most significant digit of a basis index.

Matrix kron(const Matrix &a, const Matrix &b);
Index total_dim(const std::vector<int> &dims);

/// (op acting on the listed factors, identity elsewhere) * m.
/// m may have any number of columns.
Matrix apply_left(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &targets, const Matrix &op);

/// op * m * op^dagger with op acting on the listed factors.
Matrix sandwich(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &targets, const Matrix &op);

/// op on the listed factors tensored with the identity on the rest.
Matrix embed(const Matrix &op, const std::vector<int> &dims, const std::vector<int> &targets);

/// Partial trace keeping the listed factors, in the listed order.
Matrix partial_trace(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &keep);

/// Reorders tensor factors: factor k of the result is factor perm[k] of m.
Matrix permute_factors(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &perm);

/// Same as permute_factors but only on rows (for column vectors / bases).
Matrix permute_rows(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &perm);

Matrix hermitian_part(const Matrix &m);
bool is_hermitian(const Matrix &m, double tol);
bool is_unitary(const Matrix &m, double tol);
bool is_projector(const Matrix &m, double tol);

/// Loewner order a <= b, i.e. b - a is positive semidefinite up to tol.
bool loewner_leq(const Matrix &a, const Matrix &b, double tol);

/// u^a through the eigenphases of a normal matrix: eigenvalue e^{i pi k}
/// becomes e^{i pi a k} with k in (-1, 1].
Matrix spectral_power(const Matrix &u, double a);

/// A closed subspace, held as a matrix with orthonormal columns.
class Subspace {
   public:
    Subspace() = default;
    /// basis must have orthonormal columns.
    explicit Subspace(Matrix basis);

    static Subspace zero(Index dim);
    static Subspace full(Index dim);
    /// Span of the columns, orthonormalized.
    static Subspace span(const Matrix &vectors);
    /// Eigenvectors of a Hermitian matrix with eigenvalue above tol.
    static Subspace support(const Matrix &herm);
    /// Eigenvectors of a Hermitian matrix with eigenvalue within tol of 1.
    static Subspace eigenspace_one(const Matrix &herm);
    /// Image of a projector.
    static Subspace of_projector(const Matrix &p);

    const Matrix &basis() const {
        return basis_;
    }
    Index dim() const {
        return basis_.rows();
    }
    Index rank() const {
        return basis_.cols();
    }
    Matrix projector() const;

    bool contains(const Subspace &other) const;
    bool contains_vector(const Vector &v) const;
    bool equals(const Subspace &other) const;
    Subspace ortho() const;
    Subspace meet(const Subspace &other) const;
    Subspace join(const Subspace &other) const;

   private:
    Matrix basis_;
};

}  // namespace qsl
