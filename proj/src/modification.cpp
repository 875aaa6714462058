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

#include "qsl/modification.hpp"

namespace qsl {

Command Command::init(const std::string &var, int dim) {
    return Command{Init, {var}, {dim}, Matrix()};
}

Command Command::unitary(const std::vector<std::string> &targets, const std::vector<int> &dims, const Matrix &u) {
    if (u.rows() != total_dim(dims)) {
        throw DomainError("unitary size does not match its register");
    }
    return Command{Unitary, targets, dims, u};
}

Command Command::of(const Program &p) {
    if (p->kind == ProgKind::Init) {
        return init(p->targets[0], p->dims[0]);
    }
    if (p->kind == ProgKind::Apply) {
        return unitary(p->targets, p->dims, p->gate.matrix);
    }
    throw StructuralError("only initialization and unitary statements have a modification: " + to_string(p));
}

RegSet Command::reg() const {
    return RegSet::of(targets, dims);
}

Projection ceil_zero(const Projection &p, const std::string &q) {
    if (!p.dom.contains(q)) {
        throw DomainError("variable " + q + " is not in the projection register");
    }
    int dq = p.dom.dim_of(q);
    Projection zero = Projection::from_matrix({q}, {dq}, ops::basis_projector(dq, 0)).extend(p.dom);
    Subspace common = p.space.meet(zero.space);
    // move q to the front; rows with q = 0 are then the leading block
    std::vector<int> perm{p.dom.position(q)};
    for (int k = 0; k < (int)p.dom.size(); k++) {
        if (k != perm[0]) {
            perm.push_back(k);
        }
    }
    Matrix moved = permute_rows(common.basis(), p.dom.dims(), perm);
    RegSet rest = p.dom.minus(RegSet{{q, dq}});
    Matrix contracted = moved.topRows(rest.dim());
    Projection out;
    out.dom = rest;
    out.space = Subspace::span(contracted);
    out.listed = rest.names();
    return out;
}

std::optional<Formula> modify_atomic(const Formula &atom, const Command &cmd) {
    if (atom->kind != FKind::Proj) {
        throw StructuralError("modify_atomic expects a projection");
    }
    const Projection &p = *atom->proj;
    RegSet q = cmd.reg();
    if (cmd.kind == Command::Unitary) {
        if (q.disjoint(p.dom)) {
            return atom;
        }
        if (!q.subset_of(p.dom)) {
            return std::nullopt;
        }
        Projection out;
        out.dom = p.dom;
        out.space = Subspace(apply_left(p.space.basis(), p.dom.dims(), p.dom.positions(cmd.targets), cmd.matrix.adjoint()));
        out.listed = p.dom.names();
        return fm::proj(out);
    }
    const std::string &v = cmd.targets[0];
    if (!p.dom.contains(v)) {
        return atom;
    }
    return fm::conj(fm::D(q), fm::proj(ceil_zero(p, v)));
}

std::optional<Formula> modify(const Formula &f, const Command &cmd) {
    RegSet q = cmd.reg();
    switch (f->kind) {
        case FKind::Top:
        case FKind::Bot:
        case FKind::D:
            return f;
        case FKind::U:
            if (cmd.kind == Command::Unitary) {
                if (q.subset_of(f->set) || q.disjoint(f->set)) {
                    return f;
                }
                return std::nullopt;
            }
            if (q.disjoint(f->set)) {
                return f;
            }
            return std::nullopt;
        case FKind::Proj:
            return modify_atomic(f, cmd);
        case FKind::And:
        case FKind::Or: {
            auto a = modify(f->lhs, cmd);
            auto b = modify(f->rhs, cmd);
            if (!a || !b) {
                return std::nullopt;
            }
            return f->kind == FKind::And ? fm::conj(*a, *b) : fm::disj(*a, *b);
        }
        case FKind::Star: {
            RegSet fa = free_vars(f->lhs);
            RegSet fb = free_vars(f->rhs);
            for (const RegSet *side : {&fa, &fb}) {
                if (!q.subset_of(*side) && !q.disjoint(*side)) {
                    return std::nullopt;
                }
            }
            auto a = modify(f->lhs, cmd);
            auto b = modify(f->rhs, cmd);
            if (!a || !b) {
                return std::nullopt;
            }
            if (cmd.kind == Command::Unitary) {
                return fm::star(*a, *b);
            }
            bool in_a = !q.disjoint(fa);
            bool in_b = !q.disjoint(fb);
            if (!in_a && !in_b) {
                return fm::star(*a, *b);
            }
            if (in_a && in_b) {
                return std::nullopt;
            }
            return fm::conj(fm::conj(*a, *b), fm::star(fm::D(fa.minus(q)), fm::D(fb.minus(q))));
        }
        case FKind::Imp:
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Formula> e_modify(const Formula &f, const std::vector<std::string> &targets, const QuantumOperation &op) {
    RegSet q = RegSet::of(targets, op.dims);
    switch (f->kind) {
        case FKind::Top:
        case FKind::Bot:
            return f;
        case FKind::Proj: {
            const Projection &p = *f->proj;
            if (q.disjoint(p.dom)) {
                return f;
            }
            if (!q.subset_of(p.dom)) {
                return std::nullopt;
            }
            std::vector<int> pos = p.dom.positions(targets);
            Matrix perp = p.space.ortho().projector();
            Matrix a = Matrix::Zero(perp.rows(), perp.cols());
            for (const auto &e : op.kraus) {
                a += sandwich(perp, p.dom.dims(), pos, e.adjoint());
            }
            Projection out;
            out.dom = p.dom;
            out.space = Subspace::support(hermitian_part(a)).ortho();
            out.listed = p.dom.names();
            return fm::proj(out);
        }
        case FKind::And:
        case FKind::Or: {
            auto a = e_modify(f->lhs, targets, op);
            auto b = e_modify(f->rhs, targets, op);
            if (!a || !b) {
                return std::nullopt;
            }
            return f->kind == FKind::And ? fm::conj(*a, *b) : fm::disj(*a, *b);
        }
        default:
            return std::nullopt;
    }
}

QState apply_operation(const QState &rho, const std::vector<std::string> &targets, const QuantumOperation &op) {
    std::vector<int> pos = rho.domain().positions(targets);
    auto dims = rho.domain().dims();
    Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const auto &e : op.kraus) {
        out += sandwich(rho.matrix(), dims, pos, e);
    }
    return QState(rho.domain(), out);
}

}  // namespace qsl
