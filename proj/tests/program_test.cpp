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

Manifest qubits(std::initializer_list<const char *> names) {
    Manifest m;
    for (const char *n : names) {
        m.declare(n, 2);
    }
    return m;
}

QState on_q(const Matrix &rho) {
    return QState(RegSet::of({"q"}, {2}), rho);
}

TEST(Vars, Examples) {
    Manifest m = qubits({"q", "r"});
    EXPECT_TRUE(vars(parse_program("skip", m)).empty());
    EXPECT_EQ(vars(parse_program("q := |0>; q, r := CZ[q, r]", m)), RegSet::of({"q", "r"}, {2, 2}));
    EXPECT_EQ(vars(cases::build_qotp(1)), RegSet::of({"a", "b", "q"}, {2, 2, 2}));
}

TEST(Denote, Skip) {
    Rng rng(1);
    QState rho = random_state(RegSet::of({"q"}, {2}), rng);
    EXPECT_LT(distance(denote(prog::skip(), rho), rho), 1e-15);
}

TEST(Denote, InitResetsToZero) {
    Matrix rho(2, 2);
    rho << 5, 1, 1, 1;
    rho /= 6;
    QState out = denote(prog::init("q", 2), on_q(rho));
    EXPECT_LT((out.matrix() - ops::basis_projector(2, 0)).norm(), 1e-15);
}

TEST(Denote, MeasurementBranchWeights) {
    // (2/3)|0><0| + (1/3)|+><+| measured in the +/- basis: the |0> part splits
    // evenly, so outcome + carries 1/3 + 1/3 and - carries 1/3.
    Manifest m = qubits({"q", "f"});
    Matrix rho = 2.0 / 3 * ops::basis_projector(2, 0) + 1.0 / 3 * ket_projector(ket({1, 1}) / std::sqrt(2.0));
    // record the outcome in a flag register f
    Program p = parse_program("if Mpm[q] = 0 -> skip = 1 -> f := X[f] fi", m);
    QState in = *combine(on_q(rho), QState(RegSet::of({"f"}, {2}), ops::basis_projector(2, 0)));
    QState flag = denote(p, in).restrict(RegSet::of({"f"}, {2}));
    EXPECT_NEAR(flag.matrix()(0, 0).real(), 2.0 / 3, 1e-14);
    EXPECT_NEAR(flag.matrix()(1, 1).real(), 1.0 / 3, 1e-14);
}

TEST(Denote, WhileFlipsOnce) {
    Manifest m = qubits({"q"});
    Program p = parse_program("while M[q] = 1 do q := X[q] od", m);
    Diagnostics diag;
    QState out = denote(p, on_q(ops::basis_projector(2, 1)), {}, &diag);
    EXPECT_LT((out.matrix() - ops::basis_projector(2, 0)).norm(), 1e-15);
    EXPECT_FALSE(diag.loop_truncated);
}

TEST(Denote, DivergentLoopReportsResidual) {
    Manifest m = qubits({"q"});
    Program p = parse_program("while M[q] = 1 do skip od", m);
    Diagnostics diag;
    QState out = denote(p, on_q(ops::basis_projector(2, 1)), LoopConfig{16, 1e-12}, &diag);
    EXPECT_TRUE(diag.loop_truncated);
    EXPECT_NEAR(out.trace(), 0, 1e-15);
}

TEST(DualWp, Examples) {
    Manifest m = qubits({"q"});
    RegSet dom = RegSet::of({"q"}, {2});
    Subspace zero = Subspace::span(ket({1, 0}));
    EXPECT_TRUE(dual_wp(prog::skip(), dom, dom, zero).equals(zero));
    Program h = parse_program("q := H[q]", m);
    // H^dagger |0><0| H = |+><+|
    EXPECT_TRUE(dual_wp(h, dom, dom, zero).equals(Subspace::span(ket({1, 1}))));
    Program init = parse_program("q := |0>", m);
    EXPECT_TRUE(dual_wp(init, dom, dom, zero).equals(Subspace::full(2)));
}

TEST(DualWp, UnitaryConjugation) {
    Rng rng(9);
    RegSet dom = RegSet::of({"p", "q"}, {2, 2});
    for (int t = 0; t < 20; t++) {
        Matrix u = haar_unitary(4, rng);
        Subspace post = random_subspace(4, 1 + t % 3, rng);
        Program p = prog::apply(Gate{"G", {2, 2}, u, std::nullopt}, {"p", "q"});
        Matrix expected = u.adjoint() * post.projector() * u;
        EXPECT_LT((dual_wp(p, dom, dom, post).projector() - expected).norm(), 1e-9);
    }
}

TEST(Parse, Examples) {
    Manifest m = qubits({"q"});
    EXPECT_EQ(parse_program("skip", m)->kind, ProgKind::Skip);
    Program p = parse_program("q := |0>; q := H[q]", m);
    ASSERT_EQ(p->kind, ProgKind::Seq);
    auto leaves = flatten(p);
    ASSERT_EQ(leaves.size(), 2u);
    EXPECT_EQ(leaves[0]->kind, ProgKind::Init);
    EXPECT_EQ(leaves[1]->kind, ProgKind::Apply);
    EXPECT_EQ(leaves[1]->gate.name, "H");
}

TEST(Parse, OneTimePadSource) {
    std::string text = read_text(data_path("programs/qotp1.qw"));
    Manifest m = Manifest::from_file(data_path("manifests/qotp1.json"));
    Program p = parse_program(text, m);
    EXPECT_TRUE(equal(p, cases::build_qotp(1)));
    // key preparation (4 commands and a measurement) then the encryption branch
    auto leaves = flatten(p);
    ASSERT_EQ(leaves.size(), 6u);
    EXPECT_EQ(leaves[4]->kind, ProgKind::If);
    EXPECT_EQ(leaves[5]->kind, ProgKind::If);
    EXPECT_EQ(leaves[5]->children.size(), 4u);
}

TEST(Parse, RoundTripsThroughPrinter) {
    for (const auto &name : {"qotp2", "qss2", "qss_e1", "vqa", "bell_phase"}) {
        Manifest m = Manifest::from_file(data_path(std::string("manifests/") + name + ".json"));
        Program p = parse_program(read_text(data_path(std::string("programs/") + name + ".qw")), m);
        EXPECT_TRUE(equal(parse_program(to_string(p), m), p)) << name;
    }
}

TEST(Parse, ErrorsCarryPositions) {
    Manifest m = qubits({"q"});
    try {
        parse_program("skip;\nq := Foo[q]", m);
        FAIL() << "expected a parse error";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 2);
        EXPECT_EQ(e.col, 6);
    }
    EXPECT_THROW(parse_program("q := H[q", m), ParseError);
    EXPECT_THROW(parse_program("if M[q] = 0 -> skip fi", m), Error);
}

TEST(Equality, ModuloSequencing) {
    Manifest m = qubits({"q"});
    Program a = parse_program("q := H[q]", m);
    Program b = parse_program("q := X[q]", m);
    Program c = parse_program("q := Z[q]", m);
    EXPECT_TRUE(equal(prog::seq(prog::seq(a, b), c), prog::seq(a, prog::seq(b, c))));
    EXPECT_FALSE(equal(prog::seq(a, b), prog::seq(b, a)));
}

TEST(Locality, ProgramsActOnlyOnTheirVariables) {
    // cylindric extension: running on a larger state leaves the rest alone
    Rng rng(21);
    Manifest m;
    for (int t = 0; t < 30; t++) {
        Program p = random_program({"x0", "x1"}, 3, 100 + t, m);
        QState small = random_state(RegSet::of({"x0", "x1"}, {2, 2}), rng);
        QState frame = random_state(RegSet::of({"y"}, {3}), rng);
        QState big = denote(p, *combine(small, frame));
        EXPECT_LT(distance(big, *combine(denote(p, small), frame)), 1e-9);
    }
}

}  // namespace
