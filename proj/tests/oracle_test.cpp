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
    for (const auto &v : {"p", "q", "r"}) {
        m.declare(v, 2);
    }
    return m;
}

Formula F(const std::string &text) {
    return parse_formula(text, qubits());
}

TEST(Sampler, TopGivesValidStates) {
    RegSet q = RegSet::of({"q"}, {2});
    auto s = sample_satisfying(F("top"), q, 20, 1);
    ASSERT_EQ(s.states.size(), 20u);
    for (const auto &rho : s.states) {
        EXPECT_TRUE(rho.is_valid(1e-9));
        EXPECT_EQ(rho.domain(), q);
    }
}

TEST(Sampler, UniformMarginalsAreExact) {
    RegSet pq = RegSet::of({"p", "q"}, {2, 2});
    for (const auto &rho : sample_satisfying(F("U[q]"), pq, 20, 2).states) {
        EXPECT_LT((rho.restrict(RegSet::of({"q"}, {2})).matrix() - Matrix::Identity(2, 2) / 2).norm(), 1e-12);
    }
}

TEST(Sampler, OrthogonalConjunctionIsUnsatisfiable) {
    // meet of two orthogonal rank-one projections is zero
    Subspace zero = Subspace::span(ket({1, 0}));
    EXPECT_EQ(zero.meet(Subspace::span(ket({0, 1}))).rank(), 0);
    auto s = sample_satisfying(F("proj zero on [q] /\\ proj one on [q]"), RegSet::of({"q"}, {2}), 5, 3);
    EXPECT_TRUE(s.states.empty());
}

TEST(Validate, Examples) {
    RegSet q = RegSet::of({"q"}, {2});
    EXPECT_TRUE(validate_triple(F("top"), prog::skip(), F("top"), q, 20, 1).ok);
    Program pad = cases::build_qotp(1);
    Validation v = validate_triple(fm::top(), pad, fm::U(RegSet::of({"q"}, {2})), vars(pad), 100, 2);
    EXPECT_TRUE(v.ok);
    EXPECT_EQ(v.samples, 100);
    Validation bad = validate_triple(F("top"), parse_program("q := H[q]", qubits()), F("proj zero on [q]"), q, 50, 3);
    EXPECT_FALSE(bad.ok);
    ASSERT_TRUE(bad.counterexample);
    // H sends |1> to |->, which has weight 1/2 on |1>; any non-|+> input fails
    EXPECT_FALSE(satisfies(bad.counterexample->output, F("proj zero on [q]")));
}

TEST(Generator, DepthZeroIsSkip) {
    EXPECT_EQ(random_program({"q"}, 0, 5, Manifest())->kind, ProgKind::Skip);
}

TEST(Generator, SeededAndLoopFree) {
    for (uint64_t s = 0; s < 20; s++) {
        Program a = random_program({"x0", "x1"}, 3, s, Manifest());
        Program b = random_program({"x0", "x1"}, 3, s, Manifest());
        EXPECT_EQ(to_string(a), to_string(b));
        EXPECT_TRUE(loop_free(a));
        EXPECT_TRUE(vars(a).subset_of(RegSet::of({"x0", "x1"}, {2, 2})));
    }
}

TEST(Properties, WeakestPreconditionFuzz) {
    auto r = wp_fuzz_suite(100, 77);
    EXPECT_TRUE(r.ok()) << r.first;
}

TEST(Properties, WeakestPreconditionIsWeakest) {
    // inputs outside dual_wp reach states outside the post with positive weight
    Rng rng(8);
    Manifest m;
    for (int t = 0; t < 30; t++) {
        Program p = random_program({"x0", "x1"}, 3, 500 + t, m);
        RegSet dom = RegSet::of({"x0", "x1"}, {2, 2});
        Projection post = projection_of_rank(dom, 1 + t % 3, rng);
        Subspace pre = dual_wp(p, dom, dom, post.space);
        Subspace out = pre.ortho();
        if (out.rank() == 0) {
            continue;
        }
        Vector v = out.basis().col(0);
        QState rho = QState::pure(dom, v);
        EXPECT_FALSE(satisfies(denote(p, rho), fm::proj(post))) << to_string(p);
    }
}

}  // namespace
