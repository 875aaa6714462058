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

#include "qsl/entailment.hpp"

#include <set>

#include "qsl/oracle.hpp"

namespace qsl {

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Proved:
            return "proved";
        case Verdict::Disproved:
            return "disproved";
        case Verdict::Unknown:
            return "unknown";
    }
    return "?";
}

bool projection_forces_uniform(const Projection &p, const RegSet &s) {
    if (!s.subset_of(p.dom)) {
        throw DomainError("uniformity register " + s.str() + " is not inside " + p.dom.str());
    }
    if (s.empty() || p.rank() == 0) {
        return true;
    }
    RegSet rest = p.dom.minus(s);
    std::vector<int> perm = p.dom.positions(s.names());
    for (int k : p.dom.positions(rest.names())) {
        perm.push_back(k);
    }
    Matrix moved = permute_rows(p.space.basis(), p.dom.dims(), perm);
    Index d1 = s.dim();
    Index dr = rest.dim();
    std::vector<Matrix> blocks;
    for (Index i = 0; i < moved.cols(); i++) {
        Matrix m(d1, dr);
        for (Index a = 0; a < d1; a++) {
            for (Index b = 0; b < dr; b++) {
                m(a, b) = moved(a * dr + b, i);
            }
        }
        blocks.push_back(m);
    }
    Matrix mixed = Matrix::Identity(d1, d1) / (double)d1;
    for (size_t i = 0; i < blocks.size(); i++) {
        for (size_t j = 0; j < blocks.size(); j++) {
            Matrix a = blocks[i] * blocks[j].adjoint();
            double err = i == j ? (a - mixed).norm() : a.norm();
            if (err > tolerance()) {
                return false;
            }
        }
    }
    return true;
}

namespace {

constexpr size_t kMaxCases = 64;

struct Facts {
    bool bot = false;
    std::vector<Projection> projs;
    std::vector<RegSet> uniform;
    std::vector<Formula> conjuncts;
    std::vector<std::pair<Formula, Formula>> stars;
};

// Star trees of uniformity atoms collapse to one uniformity atom.
bool uniform_star(const Formula &f, RegSet &acc) {
    if (f->kind == FKind::U) {
        acc = acc.unite(f->set);
        return true;
    }
    if (f->kind == FKind::Top) {
        return true;
    }
    if (f->kind == FKind::Star) {
        RegSet a, b;
        if (!uniform_star(f->lhs, a) || !uniform_star(f->rhs, b) || !a.disjoint(b)) {
            return false;
        }
        acc = acc.unite(a).unite(b);
        return true;
    }
    return false;
}

void gather(const Formula &f, Facts &facts) {
    facts.conjuncts.push_back(f);
    switch (f->kind) {
        case FKind::Bot:
            facts.bot = true;
            break;
        case FKind::U:
            facts.uniform.push_back(f->set);
            break;
        case FKind::Proj:
            facts.projs.push_back(*f->proj);
            break;
        case FKind::And:
            gather(f->lhs, facts);
            gather(f->rhs, facts);
            break;
        case FKind::Star: {
            facts.stars.emplace_back(f->lhs, f->rhs);
            gather(f->lhs, facts);
            gather(f->rhs, facts);
            RegSet acc;
            if (uniform_star(f, acc) && !acc.empty()) {
                facts.uniform.push_back(acc);
            }
            break;
        }
        default:
            break;
    }
}

std::vector<Formula> split_or(const Formula &f) {
    switch (f->kind) {
        case FKind::Or: {
            auto a = split_or(f->lhs);
            auto b = split_or(f->rhs);
            a.insert(a.end(), b.begin(), b.end());
            if (a.size() > kMaxCases) {
                return {f};
            }
            return a;
        }
        case FKind::And:
        case FKind::Star: {
            auto a = split_or(f->lhs);
            auto b = split_or(f->rhs);
            if (a.size() * b.size() > kMaxCases) {
                return {f};
            }
            std::vector<Formula> out;
            for (const auto &x : a) {
                for (const auto &y : b) {
                    out.push_back(f->kind == FKind::And ? fm::conj(x, y) : fm::star(x, y));
                }
            }
            return out;
        }
        default:
            return {f};
    }
}

class Prover {
   public:
    explicit Prover(const Facts &facts) : facts_(facts) {
    }

    bool prove(const Formula &goal) {
        if (facts_.bot) {
            note("bottom on the left");
            return true;
        }
        for (const auto &c : facts_.conjuncts) {
            if (equal(c, goal)) {
                return true;
            }
        }
        switch (goal->kind) {
            case FKind::Top:
                return true;
            case FKind::D:
                note("domain atoms hold under global implication");
                return true;
            case FKind::Bot:
                return false;
            case FKind::And:
                return prove(goal->lhs) && prove(goal->rhs);
            case FKind::Or:
                return prove(goal->lhs) || prove(goal->rhs);
            case FKind::Proj:
                return prove_projection(*goal->proj);
            case FKind::U:
                return prove_uniform(goal->set);
            case FKind::Star:
                return prove_star(goal);
            case FKind::Imp:
                return false;
        }
        return false;
    }

    const std::set<std::string> &notes() const {
        return notes_;
    }

   private:
    void note(const std::string &s) {
        notes_.insert(s);
    }

    std::optional<Projection> meet_all(RegSet dom) const {
        if (facts_.projs.empty()) {
            return std::nullopt;
        }
        for (const auto &p : facts_.projs) {
            dom = dom.unite(p.dom);
        }
        Projection m = Projection::identity(dom);
        m.label.clear();
        for (const auto &p : facts_.projs) {
            m.space = m.space.meet(p.extend(dom).space);
        }
        return m;
    }

    bool prove_projection(const Projection &q) {
        if (q.rank() == q.dom.dim()) {
            note("identity projection");
            return true;
        }
        for (const auto &p : facts_.projs) {
            RegSet w = p.dom.unite(q.dom);
            if (q.extend(w).space.contains(p.extend(w).space)) {
                note("projection order with cylindric extension");
                return true;
            }
        }
        if (facts_.projs.size() > 1) {
            auto m = meet_all(q.dom);
            if (m && q.extend(m->dom).space.contains(m->space)) {
                note("conjunction of projections as their meet");
                return true;
            }
        }
        return false;
    }

    bool prove_uniform(const RegSet &s) {
        if (s.empty()) {
            return true;
        }
        for (const auto &t : facts_.uniform) {
            if (s.subset_of(t)) {
                note("uniformity on a larger register");
                return true;
            }
        }
        std::vector<Projection> candidates = facts_.projs;
        if (facts_.projs.size() > 1) {
            if (auto m = meet_all(RegSet{})) {
                candidates.push_back(*m);
            }
        }
        for (const auto &p : candidates) {
            if (p.rank() == 0) {
                note("empty projection");
                return true;
            }
            RegSet s1 = s.intersect(p.dom);
            RegSet s2 = s.minus(p.dom);
            if (s1.empty()) {
                continue;
            }
            bool rest_ok = s2.empty();
            for (const auto &t : facts_.uniform) {
                if (s2.subset_of(t)) {
                    rest_ok = true;
                }
            }
            if (rest_ok && projection_forces_uniform(p, s1)) {
                note("projection basis forces a uniform marginal");
                return true;
            }
        }
        return false;
    }

    bool prove_star(const Formula &goal) {
        RegSet fa = free_vars(goal->lhs);
        RegSet fb = free_vars(goal->rhs);
        if (!fa.disjoint(fb)) {
            return false;
        }
        if (fa.empty() || fb.empty()) {
            return prove(fm::conj(goal->lhs, goal->rhs));
        }
        RegSet acc;
        if (uniform_star(goal, acc)) {
            note("separated uniformity atoms merge");
            return prove_uniform(acc);
        }
        for (const auto &[x, y] : facts_.stars) {
            for (int swap = 0; swap < 2; swap++) {
                const Formula &l = swap ? y : x;
                const Formula &r = swap ? x : y;
                if (!fa.subset_of(free_vars(l)) || !fb.subset_of(free_vars(r))) {
                    continue;
                }
                Facts fl, fr;
                gather(l, fl);
                gather(r, fr);
                Prover pl(fl), pr(fr);
                if (pl.prove(goal->lhs) && pr.prove(goal->rhs)) {
                    note("separating conjunction componentwise");
                    return true;
                }
            }
        }
        return false;
    }

    const Facts &facts_;
    std::set<std::string> notes_;
};

}  // namespace

Entailment entails_global(const Formula &lhs, const Formula &rhs, uint64_t seed, int samples) {
    Entailment out;
    bool all = true;
    std::set<std::string> notes;
    for (const auto &alt : split_or(lhs)) {
        Facts facts;
        gather(alt, facts);
        Prover p(facts);
        if (!p.prove(rhs)) {
            all = false;
            break;
        }
        notes.insert(p.notes().begin(), p.notes().end());
    }
    if (all) {
        out.verdict = Verdict::Proved;
        for (const auto &n : notes) {
            out.reason += (out.reason.empty() ? "" : "; ") + n;
        }
        if (out.reason.empty()) {
            out.reason = "syntactic";
        }
        return out;
    }
    RegSet v = free_vars(lhs).unite(free_vars(rhs));
    try {
        SampleSet s = sample_satisfying(lhs, v, samples, seed);
        for (const auto &rho : s.states) {
            SatResult r = check_satisfaction(rho, rhs);
            if (!r.holds) {
                out.verdict = Verdict::Disproved;
                out.reason = "sampled state fails " + r.culprit;
                out.counterexample = rho;
                return out;
            }
        }
    } catch (const UnsupportedError &e) {
        out.reason = e.what();
        return out;
    }
    out.reason = "no schema applies and sampling found no counterexample";
    return out;
}

}  // namespace qsl
