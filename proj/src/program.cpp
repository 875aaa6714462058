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

#include "qsl/program.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "qsl/syntax.hpp"

namespace qsl {

namespace prog {

Program skip() {
    static const Program s = std::make_shared<ProgramNode>();
    return s;
}

Program seq(Program a, Program b) {
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgKind::Seq;
    n->children = {std::move(a), std::move(b)};
    return n;
}

Program seq(const std::vector<Program> &items) {
    if (items.empty()) {
        return skip();
    }
    Program out = items.back();
    for (size_t k = items.size() - 1; k-- > 0;) {
        out = seq(items[k], out);
    }
    return out;
}

Program init(const std::string &var, int dim) {
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgKind::Init;
    n->targets = {var};
    n->dims = {dim};
    return n;
}

namespace {

void check_register(const std::vector<std::string> &targets) {
    std::set<std::string> seen;
    for (const auto &t : targets) {
        if (!seen.insert(t).second) {
            throw StructuralError("register repeats variable " + t);
        }
    }
    if (targets.empty()) {
        throw StructuralError("empty register");
    }
}

}  // namespace

Program apply(const Gate &gate, const std::vector<std::string> &targets) {
    check_register(targets);
    if (gate.dims.size() != targets.size()) {
        throw DomainError("gate " + gate.name + " arity does not match its register");
    }
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgKind::Apply;
    n->targets = targets;
    n->dims = gate.dims;
    n->gate = gate;
    return n;
}

Program if_measure(const Measurement &m, const std::vector<std::string> &targets, std::vector<Program> branches) {
    check_register(targets);
    if (m.dims.size() != targets.size()) {
        throw DomainError("measurement " + m.name + " arity does not match its register");
    }
    if (branches.size() != m.projectors.size()) {
        throw StructuralError("measurement " + m.name + " has " + std::to_string(m.projectors.size()) +
                              " outcomes but the branch list has " + std::to_string(branches.size()));
    }
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgKind::If;
    n->targets = targets;
    n->dims = m.dims;
    n->meas = m;
    n->children = std::move(branches);
    return n;
}

Program while_measure(const Measurement &m, const std::vector<std::string> &targets, Program body) {
    check_register(targets);
    if (m.dims.size() != targets.size()) {
        throw DomainError("measurement " + m.name + " arity does not match its register");
    }
    if (m.projectors.size() != 2) {
        throw StructuralError("loop guard " + m.name + " must have exactly the outcomes 0 and 1");
    }
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgKind::While;
    n->targets = targets;
    n->dims = m.dims;
    n->meas = m;
    n->children = {std::move(body)};
    return n;
}

}  // namespace prog

RegSet vars(const Program &p) {
    RegSet out;
    for (size_t k = 0; k < p->targets.size(); k++) {
        out.insert(p->targets[k], p->dims[k]);
    }
    for (const auto &c : p->children) {
        out = out.unite(vars(c));
    }
    return out;
}

namespace {

void flatten_into(const Program &p, std::vector<Program> &out) {
    if (p->kind == ProgKind::Seq) {
        for (const auto &c : p->children) {
            flatten_into(c, out);
        }
    } else {
        out.push_back(p);
    }
}

bool same_matrix(const Matrix &a, const Matrix &b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).norm() <= tolerance();
}

bool equal_leaf(const Program &a, const Program &b) {
    if (a->kind != b->kind || a->targets != b->targets || a->dims != b->dims) {
        return false;
    }
    switch (a->kind) {
        case ProgKind::Skip:
        case ProgKind::Init:
            return true;
        case ProgKind::Apply:
            return a->gate.name == b->gate.name && same_matrix(a->gate.matrix, b->gate.matrix);
        case ProgKind::If:
        case ProgKind::While: {
            if (a->meas.name != b->meas.name || a->meas.projectors.size() != b->meas.projectors.size() ||
                a->children.size() != b->children.size()) {
                return false;
            }
            for (size_t k = 0; k < a->meas.projectors.size(); k++) {
                if (!same_matrix(a->meas.projectors[k], b->meas.projectors[k])) {
                    return false;
                }
            }
            for (size_t k = 0; k < a->children.size(); k++) {
                if (!equal(a->children[k], b->children[k])) {
                    return false;
                }
            }
            return true;
        }
        case ProgKind::Seq:
            break;
    }
    return false;
}

std::string join(const std::vector<std::string> &xs) {
    std::string out;
    for (size_t k = 0; k < xs.size(); k++) {
        if (k) {
            out += ", ";
        }
        out += xs[k];
    }
    return out;
}

void print(const Program &p, std::ostream &out) {
    switch (p->kind) {
        case ProgKind::Skip:
            out << "skip";
            return;
        case ProgKind::Seq: {
            auto items = flatten(p);
            for (size_t k = 0; k < items.size(); k++) {
                if (k) {
                    out << "; ";
                }
                print(items[k], out);
            }
            return;
        }
        case ProgKind::Init:
            out << p->targets[0] << " := |0>";
            return;
        case ProgKind::Apply:
            out << join(p->targets) << " := " << p->gate.name << "[" << join(p->targets) << "]";
            return;
        case ProgKind::If:
            out << "if " << p->meas.name << "[" << join(p->targets) << "]";
            for (size_t k = 0; k < p->children.size(); k++) {
                out << " = " << k << " -> ";
                print(p->children[k], out);
            }
            out << " fi";
            return;
        case ProgKind::While:
            out << "while " << p->meas.name << "[" << join(p->targets) << "] = 1 do ";
            print(p->children[0], out);
            out << " od";
            return;
    }
}

class ProgramParser {
   public:
    ProgramParser(const std::string &text, const Manifest &m) : lex_(text), manifest_(m) {
    }

    Program parse_all() {
        Program p = parse_seq();
        if (!lex_.at_end()) {
            lex_.fail("unexpected '" + lex_.peek().text + "' after program");
        }
        return p;
    }

   private:
    Program parse_seq() {
        std::vector<Program> items{parse_stmt()};
        while (lex_.accept(";")) {
            items.push_back(parse_stmt());
        }
        return prog::seq(items);
    }

    std::string subst(const std::string &id) const {
        if (env_.empty() || id.find('_') == std::string::npos) {
            return id;
        }
        std::string out;
        std::stringstream ss(id);
        std::string part;
        bool first = true;
        while (std::getline(ss, part, '_')) {
            if (!first) {
                out += "_";
            }
            first = false;
            auto it = env_.find(part);
            out += it == env_.end() ? part : std::to_string(it->second);
        }
        return out;
    }

    std::string var() {
        return subst(lex_.expect_ident());
    }

    std::vector<std::string> register_list() {
        std::vector<std::string> out{var()};
        while (lex_.accept(",")) {
            out.push_back(var());
        }
        return out;
    }

    std::vector<std::string> bracket_register() {
        lex_.expect("[");
        auto r = register_list();
        lex_.expect("]");
        return r;
    }

    std::vector<int> dims_of(const std::vector<std::string> &reg) const {
        std::vector<int> out;
        for (const auto &v : reg) {
            out.push_back(manifest_.var_dim(v));
        }
        return out;
    }

    std::string gate_name() {
        std::string name = lex_.expect_ident();
        if (lex_.accept("^")) {
            name += "^" + format_double(lex_.expect_number());
        }
        return name;
    }

    Program parse_stmt() {
        Token t = lex_.peek();
        if (lex_.accept("(")) {
            Program p = parse_seq();
            lex_.expect(")");
            return p;
        }
        if (t.kind != TokKind::Ident) {
            lex_.fail_at(t, "expected a statement");
        }
        if (t.text == "skip") {
            lex_.next();
            return prog::skip();
        }
        if (t.text == "if") {
            lex_.next();
            std::string m = lex_.expect_ident();
            auto reg = bracket_register();
            Measurement meas = resolve_measurement(t, m, reg);
            std::map<long, Program> branches;
            while (lex_.accept("=")) {
                Token at = lex_.peek();
                long k = lex_.expect_int();
                lex_.expect("->");
                Program body = parse_seq();
                if (k < 0 || k >= (long)meas.projectors.size()) {
                    throw StructuralError("measurement " + m + " has no outcome " + std::to_string(k));
                }
                if (!branches.emplace(k, body).second) {
                    lex_.fail_at(at, "duplicate branch for outcome " + std::to_string(k));
                }
            }
            lex_.expect("fi");
            if (branches.size() != meas.projectors.size()) {
                throw StructuralError("measurement " + m + " has " + std::to_string(meas.projectors.size()) +
                                      " outcomes but " + std::to_string(branches.size()) + " branches are given");
            }
            std::vector<Program> list;
            for (auto &[k, b] : branches) {
                list.push_back(b);
            }
            return prog::if_measure(meas, reg, list);
        }
        if (t.text == "while") {
            lex_.next();
            std::string m = lex_.expect_ident();
            auto reg = bracket_register();
            lex_.expect("=");
            Token at = lex_.peek();
            if (lex_.expect_int() != 1) {
                lex_.fail_at(at, "loop guard must test outcome 1");
            }
            lex_.expect("do");
            Program body = parse_seq();
            lex_.expect("od");
            return prog::while_measure(resolve_measurement(t, m, reg), reg, body);
        }
        if (t.text == "for") {
            lex_.next();
            std::string iv = lex_.expect_ident();
            lex_.expect("=");
            long lo = lex_.expect_int();
            lex_.expect("..");
            long hi = lex_.expect_int();
            lex_.expect("do");
            size_t body_start = lex_.pos();
            std::vector<Program> items;
            size_t body_end = body_start;
            auto saved = env_;
            if (lo > hi) {
                // parse once for syntax, discard
                env_[iv] = lo;
                parse_seq();
                body_end = lex_.pos();
            }
            for (long i = lo; i <= hi; i++) {
                lex_.seek(body_start);
                env_[iv] = i;
                items.push_back(parse_seq());
                body_end = lex_.pos();
            }
            env_ = saved;
            lex_.seek(body_end);
            lex_.expect("od");
            return prog::seq(items);
        }
        // assignment forms
        auto lhs = register_list();
        lex_.expect(":=");
        if (lex_.accept("|0>")) {
            if (lhs.size() != 1) {
                lex_.fail_at(t, "initialization takes a single variable");
            }
            return prog::init(lhs[0], manifest_.var_dim(lhs[0]));
        }
        Token gt = lex_.peek();
        std::string g = gate_name();
        auto rhs = bracket_register();
        if (rhs != lhs) {
            lex_.fail_at(gt, "register on the left of := must match the gate arguments");
        }
        try {
            return prog::apply(manifest_.gate(g, dims_of(rhs)), rhs);
        } catch (const StructuralError &e) {
            lex_.fail_at(gt, e.what());
        }
    }

    Measurement resolve_measurement(const Token &at, const std::string &name, const std::vector<std::string> &reg) {
        try {
            return manifest_.measurement(name, dims_of(reg));
        } catch (const StructuralError &e) {
            lex_.fail_at(at, e.what());
        }
    }

    Lexer lex_;
    const Manifest &manifest_;
    std::map<std::string, long> env_;
};

}  // namespace

std::vector<Program> flatten(const Program &p) {
    std::vector<Program> out;
    flatten_into(p, out);
    return out;
}

bool equal(const Program &a, const Program &b) {
    auto fa = flatten(a);
    auto fb = flatten(b);
    if (fa.size() != fb.size()) {
        return false;
    }
    for (size_t k = 0; k < fa.size(); k++) {
        if (!equal_leaf(fa[k], fb[k])) {
            return false;
        }
    }
    return true;
}

std::string to_string(const Program &p) {
    std::ostringstream out;
    print(p, out);
    return out.str();
}

Program parse_program(const std::string &text, const Manifest &manifest) {
    return ProgramParser(text, manifest).parse_all();
}

bool loop_free(const Program &p) {
    if (p->kind == ProgKind::While) {
        return false;
    }
    for (const auto &c : p->children) {
        if (!loop_free(c)) {
            return false;
        }
    }
    return true;
}

namespace {

Matrix reset_kraus(int d, int n) {
    Matrix k = Matrix::Zero(d, d);
    k(0, n) = 1;
    return k;
}

Matrix run(const Program &p, const RegSet &dom, const Matrix &m, const LoopConfig &cfg, Diagnostics *diag) {
    const auto dims = dom.dims();
    switch (p->kind) {
        case ProgKind::Skip:
            return m;
        case ProgKind::Seq: {
            Matrix cur = m;
            for (const auto &c : p->children) {
                cur = run(c, dom, cur, cfg, diag);
            }
            return cur;
        }
        case ProgKind::Init: {
            std::vector<int> pos = dom.positions(p->targets);
            int d = p->dims[0];
            Matrix out = Matrix::Zero(m.rows(), m.cols());
            for (int n = 0; n < d; n++) {
                out += sandwich(m, dims, pos, reset_kraus(d, n));
            }
            return out;
        }
        case ProgKind::Apply:
            return sandwich(m, dims, dom.positions(p->targets), p->gate.matrix);
        case ProgKind::If: {
            std::vector<int> pos = dom.positions(p->targets);
            Matrix out = Matrix::Zero(m.rows(), m.cols());
            for (size_t k = 0; k < p->children.size(); k++) {
                out += run(p->children[k], dom, sandwich(m, dims, pos, p->meas.projectors[k]), cfg, diag);
            }
            return out;
        }
        case ProgKind::While: {
            std::vector<int> pos = dom.positions(p->targets);
            Matrix out = Matrix::Zero(m.rows(), m.cols());
            Matrix cur = m;
            int iter = 0;
            for (;; iter++) {
                out += sandwich(cur, dims, pos, p->meas.projectors[0]);
                double tail = cur.trace().real() - sandwich(cur, dims, pos, p->meas.projectors[0]).trace().real();
                if (tail <= cfg.tail_tol) {
                    break;
                }
                if (iter + 1 >= cfg.max_iters) {
                    if (diag) {
                        diag->loop_truncated = true;
                        diag->loop_residual = std::max(diag->loop_residual, tail);
                    }
                    break;
                }
                cur = run(p->children[0], dom, sandwich(cur, dims, pos, p->meas.projectors[1]), cfg, diag);
            }
            return out;
        }
    }
    return m;
}

Matrix dual(const Program &p, const RegSet &dom, const Matrix &a) {
    const auto dims = dom.dims();
    switch (p->kind) {
        case ProgKind::Skip:
            return a;
        case ProgKind::Seq: {
            Matrix cur = a;
            for (size_t k = p->children.size(); k-- > 0;) {
                cur = dual(p->children[k], dom, cur);
            }
            return cur;
        }
        case ProgKind::Init: {
            std::vector<int> pos = dom.positions(p->targets);
            int d = p->dims[0];
            Matrix out = Matrix::Zero(a.rows(), a.cols());
            for (int n = 0; n < d; n++) {
                out += sandwich(a, dims, pos, reset_kraus(d, n).adjoint());
            }
            return out;
        }
        case ProgKind::Apply:
            return sandwich(a, dims, dom.positions(p->targets), p->gate.matrix.adjoint());
        case ProgKind::If: {
            std::vector<int> pos = dom.positions(p->targets);
            Matrix out = Matrix::Zero(a.rows(), a.cols());
            for (size_t k = 0; k < p->children.size(); k++) {
                out += sandwich(dual(p->children[k], dom, a), dims, pos, p->meas.projectors[k]);
            }
            return out;
        }
        case ProgKind::While:
            throw UnsupportedError("dual semantics of loops is not implemented");
    }
    return a;
}

}  // namespace

QState denote(const Program &p, const QState &rho, const LoopConfig &cfg, Diagnostics *diag) {
    RegSet v = vars(p);
    if (!v.subset_of(rho.domain())) {
        throw DomainError("program variables " + v.str() + " are not in the state domain " + rho.domain().str());
    }
    for (const auto &[n, d] : v) {
        if (rho.domain().dim_of(n) != d) {
            throw DomainError("variable " + n + " has a different dimension in the state");
        }
    }
    return QState(rho.domain(), run(p, rho.domain(), rho.matrix(), cfg, diag));
}

Matrix dual_apply(const Program &p, const RegSet &dom, const Matrix &a) {
    if (!vars(p).subset_of(dom)) {
        throw DomainError("program variables are not in the operator domain");
    }
    return dual(p, dom, a);
}

Subspace dual_wp(const Program &p, const RegSet &dom, const RegSet &post_dom, const Subspace &post) {
    if (!post_dom.subset_of(dom)) {
        throw DomainError("postcondition domain is not in the program domain");
    }
    Matrix a = embed(post.projector(), dom.dims(), dom.positions(post_dom.names()));
    return Subspace::eigenspace_one(dual_apply(p, dom, a));
}

}  // namespace qsl
