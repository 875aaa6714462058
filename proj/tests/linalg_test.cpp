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

#include <gtest/gtest.h>

#include "support.hpp"

using namespace qsl;
using namespace qsl::testing;

namespace {

Matrix plus_projector() {
    return ket_projector(ket({1, 1}) / std::sqrt(2.0));
}

TEST(Kron, BasisKetsGiveBasisColumn) {
    Matrix k = kron(ket({1, 0}), ket({0, 1}));
    ASSERT_EQ(k.rows(), 4);
    ASSERT_EQ(k.cols(), 1);
    EXPECT_EQ(k, Matrix(ket({0, 1, 0, 0})));
}

TEST(Kron, ScalarUnit) {
    Matrix a = ops::hadamard();
    EXPECT_EQ(kron(a, Matrix::Identity(1, 1)), a);
    EXPECT_EQ(kron(Matrix::Identity(1, 1), a), a);
}

TEST(Kron, PlusPlusIsQuarterEverywhere) {
    // oracle: naive index loop
    Matrix k = kron(plus_projector(), plus_projector());
    EXPECT_LT((k - naive_kron(plus_projector(), plus_projector())).norm(), 1e-15);
    EXPECT_LT((k - Matrix::Constant(4, 4, 0.25)).norm(), 1e-15);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
    Vector bell = ket({1, 0, 0, 1}) / std::sqrt(2.0);
    Matrix m = partial_trace(ket_projector(bell), {2, 2}, {1});
    EXPECT_LT((m - Matrix::Identity(2, 2) / 2).norm(), 1e-15);
}

TEST(PartialTrace, ProductKeepsFactor) {
    Matrix m = kron(ops::basis_projector(2, 0), ops::basis_projector(2, 1));
    EXPECT_LT((partial_trace(m, {2, 2}, {1}) - ops::basis_projector(2, 1)).norm(), 1e-15);
}

TEST(PartialTrace, KeepAllIsIdentityMap) {
    Matrix m = kron(plus_projector(), ops::basis_projector(3, 2));
    EXPECT_LT((partial_trace(m, {2, 3}, {0, 1}) - m).norm(), 1e-15);
}

TEST(PartialTrace, ListedOrderPermutes) {
    Matrix m = kron(ops::basis_projector(2, 0), ops::basis_projector(3, 2));
    Matrix swapped = partial_trace(m, {2, 3}, {1, 0});
    EXPECT_LT((swapped - kron(ops::basis_projector(3, 2), ops::basis_projector(2, 0))).norm(), 1e-15);
}

TEST(Subspace, SupportExamples) {
    EXPECT_EQ(Subspace::support(ops::basis_projector(2, 0)).rank(), 1);
    EXPECT_TRUE(Subspace::support(ops::basis_projector(2, 0)).contains_vector(ket({1, 0})));
    EXPECT_EQ(Subspace::support(Matrix::Identity(2, 2) / 2).rank(), 2);
    // eigenvalues of (2/3)|0><0| + (1/3)|+><+| are both positive (oracle: the matrix is [[5/6, 1/6], [1/6, 1/6]], det = 1/9 > 0)
    Matrix rho = 2.0 / 3 * ops::basis_projector(2, 0) + 1.0 / 3 * plus_projector();
    EXPECT_NEAR(rho.determinant().real(), 1.0 / 9, 1e-15);
    EXPECT_EQ(Subspace::support(rho).rank(), 2);
}

TEST(Subspace, Lattice) {
    Subspace zero = Subspace::span(ket({1, 0}));
    Subspace one = Subspace::span(ket({0, 1}));
    Subspace plus = Subspace::span(ket({1, 1}));
    EXPECT_EQ(zero.meet(one).rank(), 0);
    EXPECT_TRUE(zero.join(one).equals(Subspace::full(2)));
    EXPECT_EQ(zero.meet(plus).rank(), 0);
    EXPECT_TRUE(plus.ortho().ortho().equals(plus));
    EXPECT_TRUE(plus.ortho().equals(Subspace::span(ket({1, -1}))));
}

TEST(Subspace, FromProjector) {
    EXPECT_TRUE(Subspace::of_projector(plus_projector()).equals(Subspace::span(ket({1, 1}))));
    EXPECT_EQ(Subspace::of_projector(Matrix::Zero(3, 3)).rank(), 0);
    Matrix half = (Matrix::Identity(2, 2) + ops::pauli_x()) / 2;
    EXPECT_TRUE(Subspace::of_projector(half).equals(Subspace::span(ket({1, 1}))));
}

TEST(Loewner, Examples) {
    Matrix a = plus_projector();
    EXPECT_TRUE(loewner_leq(a, a, 1e-9));
    EXPECT_TRUE(loewner_leq(ops::basis_projector(2, 0), Matrix::Identity(2, 2), 1e-9));
    // oracle: I - |0><0| = |1><1| has eigenvalue 0, |0><0| - I has eigenvalue -1
    EXPECT_NEAR(min_eigenvalue(ops::basis_projector(2, 0) - Matrix::Identity(2, 2)), -1, 1e-15);
    EXPECT_FALSE(loewner_leq(Matrix::Identity(2, 2), ops::basis_projector(2, 0), 1e-9));
}

TEST(SpectralPower, GateConventions) {
    EXPECT_LT((spectral_power(ops::pauli_x(), 1) - ops::pauli_x()).norm(), 1e-12);
    EXPECT_LT((spectral_power(ops::cz(), 1) - ops::cz()).norm(), 1e-12);
    EXPECT_LT((spectral_power(ops::pauli_z(), 0.5) - ops::phase_s()).norm(), 1e-12);
    EXPECT_LT((spectral_power(ops::pauli_x(), 0) - Matrix::Identity(2, 2)).norm(), 1e-12);
    // X^t = |+><+| + e^{i pi t} |-><-|
    double t = 0.37;
    Matrix minus = ket_projector(ket({1, -1}) / std::sqrt(2.0));
    Matrix expected = plus_projector() + std::exp(cplx(0, M_PI * t)) * minus;
    EXPECT_LT((spectral_power(ops::pauli_x(), t) - expected).norm(), 1e-12);
}

TEST(Kernel, SupportProjectorFixesState) {
    Rng rng(11);
    for (int t = 0; t < 50; t++) {
        RegSet dom = RegSet::of({"a", "b"}, {2, 3});
        QState s = random_state(dom, rng, 1 + t % 4);
        Subspace sup = Subspace::support(s.matrix());
        Matrix p = sup.projector();
        EXPECT_LT((p * s.matrix() * p - s.matrix()).norm(), 1e-9);
        Eigen::SelfAdjointEigenSolver<Matrix> es(s.matrix());
        Index nonzero = (es.eigenvalues().array() > 1e-12).count();
        EXPECT_EQ(sup.rank(), nonzero);
        EXPECT_LE(sup.rank(), 1 + t % 4);
    }
}

TEST(Kernel, PartialTraceComposition) {
    auto r = partial_trace_suite(100, 5);
    EXPECT_TRUE(r.ok()) << r.first;
}

TEST(Kernel, TensorAssociativity) {
    auto r = tensor_suite(100, 6);
    EXPECT_TRUE(r.ok()) << r.first;
}

TEST(Kernel, OrderMatchesContainment) {
    auto r = loewner_suite(100, 7);
    EXPECT_TRUE(r.ok()) << r.first;
}

}  // namespace
