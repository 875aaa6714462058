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

#include "qsl/formula.hpp"

#include <algorithm>
#include <sstream>

namespace qsl {

namespace {

// Below this trace a state counts as zero for the normalized atom tests.
constexpr double kZeroTrace = 1e-14;

std::vector<int> canonical_perm(const std::vector<std::string> &listed, const RegSet &dom) {
    std::vector<int> perm;
    for (const auto &n : dom.names()) {
        perm.push_back((int)(std::find(listed.begin(), listed.end(), n) - listed.begin()));
    }
    return perm;
}

}  // namespace

Projection Projection::from_listed(const std::vector<std::string> &names, const std::vector<int> &dims,
                                   const Subspace &space_in_listed_order, const std::string &label) {
    Projection p;
    p.dom = RegSet::of(names, dims);
    if (space_in_listed_order.dim() != p.dom.dim()) {
        throw DomainError("projection size does not match register " + p.dom.str());
    }
    p.space = Subspace(permute_rows(space_in_listed_order.basis(), dims, canonical_perm(names, p.dom)));
    p.label = label;
    p.listed = names;
    return p;
}

Projection Projection::from_matrix(const std::vector<std::string> &names, const std::vector<int> &dims,
                                   const Matrix &projector_in_listed_order, const std::string &label) {
    return from_listed(names, dims, Subspace::of_projector(projector_in_listed_order), label);
}

Projection Projection::identity(const RegSet &dom) {
    Projection p;
    p.dom = dom;
    p.space = Subspace::full(dom.dim());
    p.label = "I";
    p.listed = dom.names();
    return p;
}

bool Projection::equals(const Projection &other) const {
    return dom == other.dom && space.equals(other.space);
}

Projection Projection::extend(const RegSet &bigger) const {
    if (!dom.subset_of(bigger)) {
        throw DomainError("cannot extend a projection on " + dom.str() + " to " + bigger.str());
    }
    if (bigger == dom) {
        return *this;
    }
    RegSet rest = bigger.minus(dom);
    std::vector<std::string> names = dom.names();
    std::vector<int> dims = dom.dims();
    for (const auto &[n, d] : rest) {
        names.push_back(n);
        dims.push_back(d);
    }
    Index dr = rest.dim();
    Matrix basis = kron(space.basis(), Matrix::Identity(dr, dr));
    Projection p;
    p.dom = bigger;
    p.space = Subspace(permute_rows(basis, dims, canonical_perm(names, bigger)));
    p.listed = bigger.names();
    return p;
}

Matrix Projection::listed_basis() const {
    std::vector<std::string> order = listed.empty() ? dom.names() : listed;
    return permute_rows(space.basis(), dom.dims(), dom.positions(order));
}

namespace fm {

namespace {
Formula make(FKind k, RegSet s = {}, std::shared_ptr<const Projection> p = nullptr, Formula l = nullptr,
             Formula r = nullptr) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = k;
    n->set = std::move(s);
    n->proj = std::move(p);
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}
}  // namespace

Formula top() {
    static const Formula t = make(FKind::Top);
    return t;
}

Formula bot() {
    static const Formula b = make(FKind::Bot);
    return b;
}

Formula D(const RegSet &s) {
    return make(FKind::D, s);
}

Formula U(const RegSet &s) {
    return make(FKind::U, s);
}

Formula proj(const Projection &p) {
    return make(FKind::Proj, {}, std::make_shared<Projection>(p));
}

Formula conj(Formula a, Formula b) {
    return make(FKind::And, {}, nullptr, std::move(a), std::move(b));
}

Formula disj(Formula a, Formula b) {
    return make(FKind::Or, {}, nullptr, std::move(a), std::move(b));
}

Formula star(Formula a, Formula b) {
    return make(FKind::Star, {}, nullptr, std::move(a), std::move(b));
}

Formula imp(Formula a, Formula b) {
    return make(FKind::Imp, {}, nullptr, std::move(a), std::move(b));
}

}  // namespace fm

RegSet free_vars(const Formula &f) {
    switch (f->kind) {
        case FKind::Top:
        case FKind::Bot:
            return {};
        case FKind::D:
        case FKind::U:
            return f->set;
        case FKind::Proj:
            return f->proj->dom;
        default:
            return free_vars(f->lhs).unite(free_vars(f->rhs));
    }
}

bool in_res(const Formula &f) {
    switch (f->kind) {
        case FKind::Imp:
            return false;
        case FKind::And:
        case FKind::Or:
        case FKind::Star:
            return in_res(f->lhs) && in_res(f->rhs);
        default:
            return true;
    }
}

bool in_sp(const Formula &f) {
    switch (f->kind) {
        case FKind::U:
        case FKind::Top:
        case FKind::Bot:
            return true;
        case FKind::Proj:
            return f->proj->rank() == 1;
        case FKind::Star:
            return in_sp(f->lhs) && in_sp(f->rhs);
        default:
            return false;
    }
}

bool in_cm(const Formula &f) {
    if (in_sp(f)) {
        return true;
    }
    switch (f->kind) {
        case FKind::Top:
        case FKind::Bot:
        case FKind::D:
        case FKind::U:
        case FKind::Proj:
            return true;
        case FKind::And:
            return in_cm(f->lhs) && in_cm(f->rhs);
        case FKind::Star:
            return (in_sp(f->lhs) && in_cm(f->rhs)) || (in_sp(f->rhs) && in_cm(f->lhs));
        default:
            return false;
    }
}

std::optional<QState> sp_least(const Formula &f) {
    switch (f->kind) {
        case FKind::Top:
            return QState();
        case FKind::Bot:
            return std::nullopt;
        case FKind::U:
            return QState::maximally_mixed(f->set);
        case FKind::Proj:
            if (f->proj->rank() != 1) {
                break;
            }
            return QState::pure(f->proj->dom, f->proj->space.basis().col(0));
        case FKind::Star: {
            auto a = sp_least(f->lhs);
            auto b = sp_least(f->rhs);
            if (!a || !b) {
                return std::nullopt;
            }
            return combine(*a, *b);
        }
        default:
            break;
    }
    throw UnsupportedError("formula is outside the SP fragment: " + to_string(f));
}

namespace {

SatResult fail(const Formula &f, double residual) {
    return SatResult{false, to_string(f), residual};
}

SatResult sat(const QState &rho, const Formula &f) {
    switch (f->kind) {
        case FKind::Top:
            return {};
        case FKind::Bot:
            return fail(f, rho.trace());
        case FKind::D:
            if (!f->set.subset_of(rho.domain())) {
                return fail(f, 1);
            }
            return {};
        case FKind::Proj: {
            const Projection &p = *f->proj;
            QState r = rho.restrict(p.dom);
            double t = r.trace();
            if (std::abs(t) <= kZeroTrace) {
                return {};
            }
            const Matrix &b = p.space.basis();
            double inside = (b.adjoint() * r.matrix() * b).trace().real();
            double residual = std::max(0.0, 1.0 - inside / t);
            if (residual > tolerance()) {
                return fail(f, residual);
            }
            return {};
        }
        case FKind::U: {
            QState r = rho.restrict(f->set);
            double t = r.trace();
            if (std::abs(t) <= kZeroTrace) {
                return {};
            }
            Index d = f->set.dim();
            double residual = (r.matrix() / t - Matrix::Identity(d, d) / (double)d).norm();
            if (residual > tolerance()) {
                return fail(f, residual);
            }
            return {};
        }
        case FKind::And: {
            SatResult a = sat(rho, f->lhs);
            if (!a.holds) {
                return a;
            }
            return sat(rho, f->rhs);
        }
        case FKind::Or: {
            SatResult a = sat(rho, f->lhs);
            if (a.holds) {
                return a;
            }
            SatResult b = sat(rho, f->rhs);
            if (b.holds) {
                return b;
            }
            return fail(f, std::min(a.residual, b.residual));
        }
        case FKind::Star: {
            RegSet fa = free_vars(f->lhs);
            RegSet fb = free_vars(f->rhs);
            if (!fa.disjoint(fb)) {
                return fail(f, 1);
            }
            SatResult a = sat(rho, f->lhs);
            if (!a.holds) {
                return a;
            }
            SatResult b = sat(rho, f->rhs);
            if (!b.holds) {
                return b;
            }
            double t = rho.trace();
            if (std::abs(t) <= kZeroTrace || fa.empty() || fb.empty()) {
                return {};
            }
            QState joint = rho.restrict(fa.unite(fb));
            QState ra = rho.restrict(fa);
            QState rb = rho.restrict(fb);
            QState prod = *combine(ra, rb);
            double residual = (joint.matrix() / t - prod.matrix() / (t * t)).norm();
            if (residual > tolerance()) {
                return fail(f, residual);
            }
            return {};
        }
        case FKind::Imp: {
            if (f->lhs->kind != FKind::Proj || f->rhs->kind != FKind::Proj ||
                f->lhs->proj->dom != f->rhs->proj->dom) {
                throw UnsupportedError("implication is only evaluated between projections on the same register");
            }
            SatResult a = sat(rho, f->lhs);
            if (!a.holds) {
                return {};
            }
            SatResult b = sat(rho, f->rhs);
            if (!b.holds) {
                return fail(f, b.residual);
            }
            return {};
        }
    }
    return {};
}

}  // namespace

SatResult check_satisfaction(const QState &rho, const Formula &f) {
    RegSet fv = free_vars(f);
    if (!fv.subset_of(rho.domain())) {
        throw DomainError("formula variables " + fv.str() + " are not in the state domain " + rho.domain().str());
    }
    for (const auto &[n, d] : fv) {
        if (rho.domain().dim_of(n) != d) {
            throw DomainError("variable " + n + " has a different dimension in the state");
        }
    }
    return sat(rho, f);
}

bool satisfies(const QState &rho, const Formula &f) {
    return check_satisfaction(rho, f).holds;
}

bool equal(const Formula &a, const Formula &b) {
    if (a == b) {
        return true;
    }
    if (a->kind != b->kind) {
        return false;
    }
    switch (a->kind) {
        case FKind::Top:
        case FKind::Bot:
            return true;
        case FKind::D:
        case FKind::U:
            return a->set == b->set;
        case FKind::Proj:
            return a->proj->equals(*b->proj);
        default:
            return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
}

namespace {

std::string rename_var(const std::string &v, const std::map<std::string, std::string> &sub) {
    auto it = sub.find(v);
    return it == sub.end() ? v : it->second;
}

}  // namespace

Formula rename(const Formula &f, const std::map<std::string, std::string> &sub) {
    switch (f->kind) {
        case FKind::Top:
        case FKind::Bot:
            return f;
        case FKind::D:
        case FKind::U: {
            RegSet s;
            for (const auto &[n, d] : f->set) {
                std::string m = rename_var(n, sub);
                if (s.contains(m)) {
                    throw DomainError("renaming merges two variables of " + f->set.str());
                }
                s.insert(m, d);
            }
            return f->kind == FKind::D ? fm::D(s) : fm::U(s);
        }
        case FKind::Proj: {
            const Projection &p = *f->proj;
            std::vector<std::string> old = p.listed.empty() ? p.dom.names() : p.listed;
            std::vector<std::string> names;
            std::vector<int> dims;
            for (const auto &n : old) {
                names.push_back(rename_var(n, sub));
                dims.push_back(p.dom.dim_of(n));
            }
            Subspace listed(p.listed_basis());
            return fm::proj(Projection::from_listed(names, dims, listed, p.label));
        }
        case FKind::And:
            return fm::conj(rename(f->lhs, sub), rename(f->rhs, sub));
        case FKind::Or:
            return fm::disj(rename(f->lhs, sub), rename(f->rhs, sub));
        case FKind::Star:
            return fm::star(rename(f->lhs, sub), rename(f->rhs, sub));
        case FKind::Imp:
            return fm::imp(rename(f->lhs, sub), rename(f->rhs, sub));
    }
    return f;
}

namespace {

std::string ids(const std::vector<std::string> &names) {
    std::string out = "[";
    for (size_t k = 0; k < names.size(); k++) {
        if (k) {
            out += ", ";
        }
        out += names[k];
    }
    return out + "]";
}

void print(const Formula &f, const ProjectionNamer &namer, std::ostream &out) {
    auto sub = [&](const Formula &g) {
        bool wrap = g->kind == FKind::And || g->kind == FKind::Or || g->kind == FKind::Star || g->kind == FKind::Imp;
        if (wrap) {
            out << "(";
        }
        print(g, namer, out);
        if (wrap) {
            out << ")";
        }
    };
    switch (f->kind) {
        case FKind::Top:
            out << "top";
            return;
        case FKind::Bot:
            out << "bot";
            return;
        case FKind::D:
            out << "D" << ids(f->set.names());
            return;
        case FKind::U:
            out << "U" << ids(f->set.names());
            return;
        case FKind::Proj: {
            const Projection &p = *f->proj;
            if (!p.label.empty()) {
                out << "proj " << p.label << " on " << ids(p.listed);
            } else if (namer) {
                out << "proj " << namer(p) << " on " << ids(p.dom.names());
            } else {
                out << "proj <rank " << p.rank() << "> on " << ids(p.dom.names());
            }
            return;
        }
        case FKind::And:
        case FKind::Or:
        case FKind::Star:
        case FKind::Imp: {
            const char *op = f->kind == FKind::And ? " /\\ " : f->kind == FKind::Or ? " \\/ " : f->kind == FKind::Star ? " * " : " -> ";
            sub(f->lhs);
            out << op;
            sub(f->rhs);
            return;
        }
    }
}

}  // namespace

std::string to_string(const Formula &f, const ProjectionNamer &namer) {
    std::ostringstream out;
    print(f, namer, out);
    return out.str();
}

void for_each_projection(const Formula &f, const std::function<void(const Projection &)> &fn) {
    if (f->kind == FKind::Proj) {
        fn(*f->proj);
    }
    if (f->lhs) {
        for_each_projection(f->lhs, fn);
    }
    if (f->rhs) {
        for_each_projection(f->rhs, fn);
    }
}

}  // namespace qsl
