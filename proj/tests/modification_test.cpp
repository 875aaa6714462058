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

Manifest qubits() {
    Manifest m;
    for (const auto &v : {"p", "q", "r", "p'", "q'"}) {
        m.declare(v, 2);
    }
    return m;
}

Formula F(const std::string &text) {
    return parse_formula(text, qubits());
}

TEST(Modify, UnitaryConjugatesProjection) {
    Rng rng(1);
    Matrix u = haar_unitary(4, rng);
    Projection p = projection_of_rank(RegSet::of({"p", "q"}, {2, 2}), 2, rng);
    auto out = modify(fm::proj(p), Command::unitary({"p", "q"}, {2, 2}, u));
    ASSERT_TRUE(out);
    ASSERT_EQ((*out)->kind, FKind::Proj);
    EXPECT_LT(((*out)->proj->matrix() - u.adjoint() * p.matrix() * u).norm(), 1e-9);
}

TEST(Modify, CeilOfZeroTensor) {
    Rng rng(2);
    Projection inner = projection_of_rank(RegSet::of({"r"}, {2}), 1, rng);
    Projection t = ceil_zero(zero_tensor("q", 2, inner), "q");
    EXPECT_TRUE(t.space.equals(inner.space));
}

TEST(Modify, InitOfUniformIsUndefined) {
    EXPECT_FALSE(modify(F("U[q]"), Command::init("q", 2)));
}

TEST(Modify, ConjunctionIsHomomorphic) {
    Command h = Command::unitary({"q"}, {2}, ops::hadamard());
    auto both = modify(F("proj zero on [q] /\\ U[p]"), h);
    auto left = modify(F("proj zero on [q]"), h);
    auto right = modify(F("U[p]"), h);
    ASSERT_TRUE(both && left && right);
    EXPECT_TRUE(equal(*both, fm::conj(*left, *right)));
    EXPECT_TRUE(equal(*left, F("proj plus on [q]")));
}

TEST(Modify, InitInsideStar) {
    // q only in the left conjunct: the D[q] * D[rest] form of the definition
    auto out = modify(F("proj zero on [q] * U[p]"), Command::init("q", 2));
    ASSERT_TRUE(out);
    EXPECT_EQ(free_vars(*out), RegSet::of({"p", "q"}, {2, 2}));
    Rng rng(3);
    RegSet pq = RegSet::of({"p", "q"}, {2, 2});
    for (const auto &rho : sample_satisfying(*out, pq, 20, 5).states) {
        EXPECT_TRUE(satisfies(denote(prog::init("q", 2), rho), F("proj zero on [q] * U[p]")));
    }
}

TEST(Modify, StraddlingUnitaryIsUndefined) {
    Command cz = Command::unitary({"p", "q"}, {2, 2}, ops::cz());
    EXPECT_FALSE(modify(F("U[p] * U[q]"), cz));
}

TEST(EModify, IdentityChannel) {
    QuantumOperation id{"id", {2}, {Matrix::Identity(2, 2)}};
    Formula f = F("proj plus on [q] /\\ proj zero on [p]");
    auto out = e_modify(f, {"q"}, id);
    ASSERT_TRUE(out);
    EXPECT_TRUE(equal(*out, f));
}

TEST(EModify, DepolarizingKillsPureProjection) {
    // Kraus sum brute force: sum_k E_k^dag (I - |0><0|) E_k has full support,
    // so nothing is carried into |0>
    QuantumOperation dep{"dep", {2}, {ops::pauli_x() / 2, ops::pauli_y() / 2, ops::pauli_z() / 2, Matrix::Identity(2, 2) / 2}};
    Matrix complement = Matrix::Identity(2, 2) - ops::basis_projector(2, 0);
    Matrix pulled = Matrix::Zero(2, 2);
    for (const auto &k : dep.kraus) {
        pulled += k.adjoint() * complement * k;
    }
    EXPECT_GT(min_eigenvalue(pulled), 0.4);
    auto out = e_modify(F("proj zero on [q]"), {"q"}, dep);
    ASSERT_TRUE(out);
    ASSERT_EQ((*out)->kind, FKind::Proj);
    EXPECT_EQ((*out)->proj->rank(), 0);
}

TEST(EModify, ChannelOnEntangledProjectionMatchesDualOracle) {
    // E(rho) = 2 sum_ij |conj(b_i)><j| rho |j><conj(b_i)| over a basis b_i of a
    // random Q, applied to q' under the maximally entangled projection on
    // (q, q'). Oracle: the kernel of sum_k (I (x) K_k^dagger) P^perp (I (x) K_k).
    Rng rng(4);
    for (int rank = 0; rank <= 2; rank++) {
        Projection post = projection_of_rank(RegSet::of({"q"}, {2}), rank, rng);
        QuantumOperation op{"pull", {2}, {}};
        const Matrix &basis = post.space.basis();
        for (Index i = 0; i < basis.cols(); i++) {
            for (Index j = 0; j < 2; j++) {
                Matrix k = Matrix::Zero(2, 2);
                k.col(j) = std::sqrt(2.0) * basis.col(i).conjugate();
                op.kraus.push_back(k);
            }
        }
        if (op.kraus.empty()) {
            op.kraus.push_back(Matrix::Zero(2, 2));
        }
        Matrix mes = Manifest().projector("MES", {2, 2});
        auto out = e_modify(fm::proj(Projection::from_matrix({"q", "q'"}, {2, 2}, mes)), {"q'"}, op);
        ASSERT_TRUE(out);
        ASSERT_EQ((*out)->kind, FKind::Proj);

        Matrix perp = Matrix::Identity(4, 4) - mes;
        Matrix a = Matrix::Zero(4, 4);
        for (const auto &k : op.kraus) {
            a += naive_kron(Matrix::Identity(2, 2), k.adjoint()) * perp * naive_kron(Matrix::Identity(2, 2), k);
        }
        Matrix ker = null_space(a, 1e-9);
        Matrix oracle = ker * ker.adjoint();
        Matrix expected = QState::from_ordered({"q", "q'"}, {2, 2}, oracle).matrix();
        EXPECT_LT(((*out)->proj->extend(RegSet::of({"q", "q'"}, {2, 2})).matrix() - expected).norm(), 1e-9)
            << "rank " << rank;
        // the dual is 2 tr(X conj(Q)) I, so any nonzero Q leaves nothing
        EXPECT_EQ((*out)->proj->rank(), rank == 0 ? 4 : 0);
    }
}

TEST(EModify, EntangledPredicateOnIdentityProgram) {
    // with psi the maximally entangled projection itself, the precondition
    // of the rule is the postcondition
    Rng rng(6);
    Projection mes = Projection::from_matrix({"q", "q'"}, {2, 2}, Manifest().projector("MES", {2, 2}));
    for (int t = 0; t < 5; t++) {
        Projection post = projection_of_rank(RegSet::of({"q"}, {2}), 1 + t % 2, rng);
        EXPECT_TRUE(pepr_precondition(mes, mes, {"q"}, {"q'"}, post).space.equals(post.space));
    }
}

TEST(EModify, BiconditionalForUnitalChannels) {
    Rng rng(5);
    QuantumOperation dephase = Manifest().channel("dephase", {2});
    RegSet pq = RegSet::of({"p", "q"}, {2, 2});
    for (int t = 0; t < 20; t++) {
        Projection p = projection_of_rank(pq, 1 + t % 3, rng);
        auto pre = e_modify(fm::proj(p), {"q"}, dephase);
        ASSERT_TRUE(pre);
        for (int k = 0; k < 10; k++) {
            QState rho = random_state(pq, rng, 1 + k % 2);
            EXPECT_EQ(satisfies(apply_operation(rho, {"q"}, dephase), fm::proj(p)), satisfies(rho, *pre));
        }
    }
}

TEST(Properties, ModificationSoundness) {
    auto r = modification_suite(300, 61);
    EXPECT_TRUE(r.ok()) << r.first;
}

TEST(Properties, CeilMaximality) {
    auto r = ceil_suite(100, 62);
    EXPECT_TRUE(r.ok()) << r.first;
}

}  // namespace
