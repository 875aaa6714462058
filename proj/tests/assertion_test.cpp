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

Manifest pq_manifest() {
    Manifest m;
    m.declare("p", 2);
    m.declare("q", 2);
    m.declare("r", 2);
    return m;
}

QState bell() {
    return QState::pure(RegSet::of({"p", "q"}, {2, 2}), ket({1, 0, 0, 1}) / std::sqrt(2.0));
}

Formula F(const std::string &text) {
    return parse_formula(text, pq_manifest());
}

TEST(Satisfaction, Examples) {
    EXPECT_TRUE(satisfies(bell(), F("U[p]")));
    EXPECT_TRUE(satisfies(QState(RegSet::of({"q"}, {2}), ops::basis_projector(2, 0)), F("D[q]")));
    QState mixed = QState::maximally_mixed(RegSet::of({"p", "q"}, {2, 2}));
    EXPECT_TRUE(satisfies(mixed, F("U[p] * U[q]")));
    SatResult r = check_satisfaction(bell(), F("U[p] * U[q]"));
    EXPECT_FALSE(r.holds);
    // oracle: || rho_pq - rho_p (x) rho_q || = || Phi+ - I/4 || = sqrt(3)/2
    EXPECT_NEAR(r.residual, std::sqrt(3.0) / 2, 1e-12);
    EXPECT_TRUE(satisfies(bell(), F("top")));
    EXPECT_FALSE(satisfies(bell(), F("bot")));
    EXPECT_TRUE(satisfies(bell(), F("proj Phi+ on [p, q]")));
    EXPECT_FALSE(satisfies(bell(), F("proj Phi- on [p, q]")));
    EXPECT_TRUE(satisfies(bell(), F("proj Phi+ on [q, p]")));
}

TEST(Satisfaction, Implication) {
    EXPECT_TRUE(satisfies(bell(), F("proj Phi- on [p, q] -> proj Psi+ on [p, q]")));
    EXPECT_TRUE(satisfies(bell(), F("proj Phi+ on [p, q] -> proj Phi+ on [p, q]")));
    EXPECT_FALSE(satisfies(bell(), F("proj Phi+ on [p, q] -> proj Phi- on [p, q]")));
    // other shapes would quantify over extensions
    EXPECT_THROW(satisfies(bell(), F("U[p] -> proj zero on [p]")), UnsupportedError);
}

TEST(Satisfaction, RequiresCoveringDomain) {
    EXPECT_THROW(check_satisfaction(bell(), F("U[r]")), Error);
}

TEST(Fragments, Examples) {
    Formula u = F("U[q]");
    EXPECT_TRUE(in_res(u));
    EXPECT_TRUE(in_cm(u));
    EXPECT_TRUE(in_sp(u));
    Formula either = F("proj zero on [q] \\/ proj one on [q]");
    EXPECT_FALSE(in_cm(either));
    EXPECT_TRUE(in_res(F("top")));
    EXPECT_TRUE(in_cm(F("top")));
    EXPECT_TRUE(in_sp(F("top")));
    EXPECT_FALSE(in_res(F("top -> U[q]")));
}

TEST(Fragments, DisjunctionOfBasisStatesIsNotMixtureClosed) {
    // |0><0| and |1><1| each satisfy the disjunction, their even mixture does not
    Formula either = F("proj zero on [q] \\/ proj one on [q]");
    RegSet q = RegSet::of({"q"}, {2});
    EXPECT_TRUE(satisfies(QState(q, ops::basis_projector(2, 0)), either));
    EXPECT_TRUE(satisfies(QState(q, ops::basis_projector(2, 1)), either));
    EXPECT_FALSE(satisfies(QState::maximally_mixed(q), either));
}

TEST(Entailment, Examples) {
    Manifest m = pq_manifest();
    auto plus_in_q = entails_global(F("proj zero on [q]"), F("proj I on [q]"));
    EXPECT_EQ(plus_in_q.verdict, Verdict::Proved);
    EXPECT_EQ(entails_global(F("U[p, q]"), F("U[p]")).verdict, Verdict::Proved);
    Manifest qutrits;
    for (const auto &v : {"p", "q", "r"}) {
        qutrits.declare(v, 3);
    }
    auto shares = entails_global(parse_formula("proj PS on [p, q, r]", qutrits),
                                 parse_formula("U[p] /\\ U[q] /\\ U[r]", qutrits));
    EXPECT_EQ(shares.verdict, Verdict::Proved);
    auto wrong = entails_global(F("proj I on [q]"), F("proj zero on [q]"), 3, 64);
    EXPECT_EQ(wrong.verdict, Verdict::Disproved);
    ASSERT_TRUE(wrong.counterexample);
    EXPECT_FALSE(satisfies(*wrong.counterexample, F("proj zero on [q]")));
}

TEST(Parser, Examples) {
    EXPECT_EQ(F("top")->kind, FKind::Top);
    Formula u = F("U[q1, q2]");
    EXPECT_EQ(u->kind, FKind::U);
    EXPECT_EQ(u->set.names(), (std::vector<std::string>{"q1", "q2"}));
    Formula b = F("proj Phi+ on [p, q]");
    ASSERT_EQ(b->kind, FKind::Proj);
    Matrix phi(4, 4);
    phi.setZero();
    phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 0.5;
    EXPECT_LT((b->proj->matrix() - phi).norm(), 1e-15);
}

TEST(Parser, Precedence) {
    Formula f = F("U[p] * U[q] /\\ top \\/ bot -> top");
    ASSERT_EQ(f->kind, FKind::Imp);
    ASSERT_EQ(f->lhs->kind, FKind::Or);
    ASSERT_EQ(f->lhs->lhs->kind, FKind::And);
    EXPECT_EQ(f->lhs->lhs->lhs->kind, FKind::Star);
}

TEST(Parser, PrintedFormsReparse) {
    for (const auto &text : {"U[p] * U[q]", "proj Phi- on [q, p] /\\ D[r]", "(top \\/ bot) -> U[p, q, r]"}) {
        Formula f = F(text);
        EXPECT_TRUE(equal(F(to_string(f)), f)) << text;
    }
}

TEST(Parser, Errors) {
    EXPECT_THROW(F("U[p"), ParseError);
    EXPECT_THROW(F("proj nosuch on [p]"), ParseError);
    EXPECT_THROW(F("U[p] \\/"), ParseError);
    // overlapping separating conjunction parses but never holds
    EXPECT_FALSE(satisfies(bell(), F("U[p] * U[p]")));
}

TEST(Properties, Restriction) {
    auto r = restriction_suite(150, 41);
    EXPECT_TRUE(r.ok()) << r.first;
    EXPECT_EQ(r.trials, 150);
}

TEST(Properties, MixtureClosure) {
    auto r = cm_suite(150, 42);
    EXPECT_TRUE(r.ok()) << r.first;
}

TEST(Properties, LeastElement) {
    auto r = sp_suite(80, 43);
    EXPECT_TRUE(r.ok()) << r.first;
}

TEST(Properties, StarMatchesFactorization) {
    Rng rng(44);
    RegSet pq = RegSet::of({"p", "q"}, {2, 2});
    Formula both = F("D[p] * D[q]");
    for (int t = 0; t < 60; t++) {
        QState rho;
        if (t % 2 == 0) {
            rho = *combine(random_state(RegSet::of({"p"}, {2}), rng), random_state(RegSet::of({"q", "r"}, {2, 2}), rng));
        } else {
            rho = random_state(RegSet::of({"p", "q", "r"}, {2, 2, 2}), rng);
        }
        QState marg = rho.restrict(pq);
        double gap = distance(marg, *combine(rho.restrict(RegSet::of({"p"}, {2})), rho.restrict(RegSet::of({"q"}, {2}))));
        EXPECT_EQ(satisfies(rho, both), gap < 1e-9) << "trial " << t << " gap " << gap;
    }
}

TEST(Properties, ZeroStateSatisfiesAtomsVacuously) {
    QState zero(RegSet::of({"p"}, {2}), Matrix::Zero(2, 2));
    EXPECT_TRUE(satisfies(zero, F("proj zero on [p]")));
    EXPECT_TRUE(satisfies(zero, F("U[p]")));
}

}  // namespace
