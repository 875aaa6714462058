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

#include "qsl/proof_script.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qsl/sexpr.hpp"
#include "qsl/syntax.hpp"

namespace qsl {

namespace {

bool same_bits(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    for (Index i = 0; i < a.rows(); i++) {
        for (Index j = 0; j < a.cols(); j++) {
            if (a(i, j) != b(i, j)) {
                return false;
            }
        }
    }
    return true;
}

// ---- reading ----

class ScriptReader {
   public:
    explicit ScriptReader(const Manifest &base) {
        out_.manifest = base;
    }

    ProofScript read(const std::string &text) {
        auto forms = parse_sexprs(text);
        const SExpr *tree = nullptr;
        for (const auto &f : forms) {
            std::string h = f.head();
            if (h == "vars") {
                vars(f);
            } else if (h == "define-proj") {
                define_proj(f);
            } else if (h == "define-gate") {
                define_gate(f);
            } else if (h == "define-meas") {
                define_meas(f);
            } else if (h == "define-op") {
                define_op(f);
            } else if (h == "rule" || h == "skip-rule") {
                if (tree) {
                    f.fail("a script holds a single proof tree");
                }
                tree = &f;
            } else {
                f.fail("unknown script item '" + (h.empty() ? to_string(f) : h) + "'");
            }
        }
        if (!tree) {
            throw ParseError("script has no proof tree", 1, 1);
        }
        out_.root = node(*tree);
        return std::move(out_);
    }

   private:
    static const SExpr &arg(const SExpr &f, size_t k, const std::string &what) {
        if (!f.is_list() || f.items.size() <= k) {
            f.fail("missing " + what);
        }
        return f.items[k];
    }

    static std::string symbol(const SExpr &e, const std::string &what) {
        if (e.kind != SExpr::Symbol) {
            e.fail("expected " + what);
        }
        return e.text;
    }

    static std::string quoted(const SExpr &e, const std::string &what) {
        if (e.kind != SExpr::String) {
            e.fail("expected a quoted " + what);
        }
        return e.text;
    }

    static long integer(const SExpr &e, const std::string &what) {
        std::string s = symbol(e, what);
        try {
            size_t used = 0;
            long v = std::stol(s, &used);
            if (used == s.size()) {
                return v;
            }
        } catch (const std::exception &) {
        }
        e.fail("expected an integer " + what);
    }

    static double number(const SExpr &e) {
        std::string s = symbol(e, "number");
        try {
            size_t used = 0;
            double v = std::stod(s, &used);
            if (used == s.size()) {
                return v;
            }
        } catch (const std::exception &) {
        }
        e.fail("expected a number, found '" + s + "'");
    }

    static const SExpr &tagged(const SExpr &e, const std::string &tag) {
        if (e.head() != tag) {
            e.fail("expected (" + tag + " ...)");
        }
        return e;
    }

    static std::vector<int> dims(const SExpr &e) {
        tagged(e, "dims");
        std::vector<int> out;
        for (size_t k = 1; k < e.items.size(); k++) {
            long d = integer(e.items[k], "dimension");
            if (d < 1) {
                e.items[k].fail("dimension must be positive");
            }
            out.push_back((int)d);
        }
        return out;
    }

    static Vector vec(const SExpr &e, Index n) {
        tagged(e, "v");
        if ((Index)e.items.size() != 2 * n + 1) {
            e.fail("vector needs " + std::to_string(n) + " complex entries");
        }
        Vector v(n);
        for (Index i = 0; i < n; i++) {
            v(i) = cplx(number(e.items[2 * i + 1]), number(e.items[2 * i + 2]));
        }
        return v;
    }

    static Matrix mat(const SExpr &e, Index n) {
        tagged(e, "m");
        if ((Index)e.items.size() != n + 1) {
            e.fail("matrix needs " + std::to_string(n) + " rows");
        }
        Matrix m(n, n);
        for (Index i = 0; i < n; i++) {
            m.row(i) = vec(e.items[i + 1], n).transpose();
        }
        return m;
    }

    void vars(const SExpr &f) {
        for (size_t k = 1; k < f.items.size(); k++) {
            const SExpr &v = f.items[k];
            std::string name = symbol(arg(v, 0, "variable"), "variable name");
            long d = integer(arg(v, 1, "dimension"), "dimension");
            if (v.items.size() != 2 || d < 1) {
                v.fail("expected (NAME DIM)");
            }
            out_.manifest.declare(name, (int)d);
        }
    }

    std::pair<std::string, std::vector<int>> header(const SExpr &f) {
        return {symbol(arg(f, 1, "name"), "name"), dims(arg(f, 2, "dims"))};
    }

    void define_proj(const SExpr &f) {
        auto [name, ds] = header(f);
        const SExpr &b = tagged(arg(f, 3, "basis"), "basis");
        Index n = total_dim(ds);
        Matrix basis(n, (Index)b.items.size() - 1);
        for (size_t k = 1; k < b.items.size(); k++) {
            basis.col((Index)k - 1) = vec(b.items[k], n);
        }
        if ((basis.adjoint() * basis - Matrix::Identity(basis.cols(), basis.cols())).norm() > 1e-8) {
            b.fail("basis of " + name + " is not orthonormal");
        }
        out_.projections[name] = {ds, Subspace(basis)};
    }

    void define_gate(const SExpr &f) {
        auto [name, ds] = header(f);
        try {
            out_.manifest.add_gate(name, ds, mat(arg(f, 3, "matrix"), total_dim(ds)));
        } catch (const StructuralError &e) {
            f.fail(e.what());
        }
    }

    void define_meas(const SExpr &f) {
        auto [name, ds] = header(f);
        const SExpr &o = tagged(arg(f, 3, "outcomes"), "outcomes");
        std::vector<Matrix> ps;
        for (size_t k = 1; k < o.items.size(); k++) {
            ps.push_back(mat(o.items[k], total_dim(ds)));
        }
        try {
            out_.manifest.add_measurement(name, ds, ps);
        } catch (const StructuralError &e) {
            f.fail(e.what());
        }
    }

    void define_op(const SExpr &f) {
        auto [name, ds] = header(f);
        const SExpr &k = tagged(arg(f, 3, "kraus"), "kraus");
        QuantumOperation op{name, ds, {}};
        for (size_t i = 1; i < k.items.size(); i++) {
            op.kraus.push_back(mat(k.items[i], total_dim(ds)));
        }
        out_.operations[name] = op;
    }

    [[noreturn]] static void relocate(const ParseError &e, const SExpr &s) {
        int line = s.line + e.line - 1;
        int col = e.line == 1 ? s.col + e.col : e.col;
        throw ParseError(e.message, line, col);
    }

    Formula formula(const SExpr &s) {
        std::string text = quoted(s, "formula");
        try {
            return parse_formula(text, out_.manifest, &out_.projections);
        } catch (const ParseError &e) {
            relocate(e, s);
        } catch (const Error &e) {
            s.fail(e.what());
        }
    }

    Program program(const SExpr &s) {
        std::string text = quoted(s, "program");
        try {
            return parse_program(text, out_.manifest);
        } catch (const ParseError &e) {
            relocate(e, s);
        } catch (const Error &e) {
            s.fail(e.what());
        }
    }

    std::vector<std::string> names(const SExpr &e) {
        std::vector<std::string> out;
        for (size_t k = 1; k < e.items.size(); k++) {
            out.push_back(symbol(e.items[k], "register name"));
        }
        return out;
    }

    Evidence evidence(const SExpr &e) {
        Evidence ev;
        for (size_t k = 1; k < e.items.size(); k++) {
            const SExpr &item = e.items[k];
            std::string h = item.head();
            if (h == "primary") {
                ev.primary = names(item);
            } else if (h == "auxiliary") {
                ev.auxiliary = names(item);
            } else if (h == "op") {
                std::string name = symbol(arg(item, 1, "operation"), "operation name");
                const SExpr &t = tagged(arg(item, 2, "targets"), "targets");
                ev.op_targets = names(t);
                std::vector<int> ds;
                for (const auto &n : ev.op_targets) {
                    ds.push_back(out_.manifest.var_dim(n));
                }
                if (auto it = out_.operations.find(name); it != out_.operations.end()) {
                    if (it->second.dims != ds) {
                        item.fail("operation " + name + " does not fit its targets");
                    }
                    ev.op = it->second;
                } else {
                    try {
                        ev.op = out_.manifest.channel(name, ds);
                    } catch (const Error &err) {
                        item.fail(err.what());
                    }
                }
            } else if (h == "source") {
                ev.source = quoted(arg(item, 1, "source"), "source");
            } else if (h == "samples") {
                ev.samples = (int)integer(arg(item, 1, "count"), "sample count");
            } else if (h == "seed") {
                ev.seed = (uint64_t)integer(arg(item, 1, "seed"), "seed");
            } else {
                item.fail("unknown evidence item '" + to_string(item) + "'");
            }
        }
        return ev;
    }

    ProofNode node(const SExpr &f) {
        ProofNode n;
        if (f.head() == "skip-rule") {
            if (f.items.size() != 2) {
                f.fail("expected (skip-rule \"FORMULA\")");
            }
            Formula phi = formula(f.items[1]);
            n.rule = "Skip";
            n.concl = Judgment{phi, prog::skip(), phi};
            return n;
        }
        if (f.head() != "rule") {
            f.fail("expected (rule ...)");
        }
        n.rule = symbol(arg(f, 1, "rule name"), "rule name");
        const auto &known = rule_names();
        if (std::find(known.begin(), known.end(), n.rule) == known.end()) {
            f.items[1].fail("unknown rule '" + n.rule + "'");
        }
        bool pre = false, pr = false, post = false;
        for (size_t k = 2; k < f.items.size(); k++) {
            const SExpr &item = f.items[k];
            std::string h = item.head();
            if (h == "pre" && !pre) {
                n.concl.pre = formula(arg(item, 1, "formula"));
                pre = true;
            } else if (h == "prog" && !pr) {
                n.concl.prog = program(arg(item, 1, "program"));
                pr = true;
            } else if (h == "post" && !post) {
                n.concl.post = formula(arg(item, 1, "formula"));
                post = true;
            } else if (h == "evidence") {
                n.evidence = evidence(item);
            } else if (h == "premises") {
                for (size_t i = 1; i < item.items.size(); i++) {
                    n.premises.push_back(node(item.items[i]));
                }
            } else {
                item.fail("unexpected item '" + (h.empty() ? to_string(item) : h) + "' in rule");
            }
        }
        if (!pre || !pr || !post) {
            f.fail("rule needs pre, prog and post");
        }
        return n;
    }

    ProofScript out_;
};

// ---- printing ----

std::string vec_text(const Vector &v) {
    std::string out = "(v";
    for (Index i = 0; i < v.size(); i++) {
        out += " " + format_double(v(i).real()) + " " + format_double(v(i).imag());
    }
    return out + ")";
}

std::string mat_text(const Matrix &m) {
    std::string out = "(m";
    for (Index i = 0; i < m.rows(); i++) {
        out += " " + vec_text(m.row(i).transpose());
    }
    return out + ")";
}

std::string dims_text(const std::vector<int> &ds) {
    std::string out = "(dims";
    for (int d : ds) {
        out += " " + std::to_string(d);
    }
    return out + ")";
}

std::string names_text(const std::string &tag, const std::vector<std::string> &ns) {
    std::string out = "(" + tag;
    for (const auto &n : ns) {
        out += " " + n;
    }
    return out + ")";
}

class ScriptWriter {
   public:
    explicit ScriptWriter(const Manifest &base) : base_(base) {
    }

    std::string write(const ProofNode &root) {
        std::string tree;
        node(root, 0, tree);
        std::ostringstream out;
        if (!vars_.empty()) {
            out << "(vars";
            for (const auto &[n, d] : vars_) {
                out << " (" << n << " " << d << ")";
            }
            out << ")\n";
        }
        for (const auto &d : defs_) {
            out << d << "\n";
        }
        out << tree;
        return out.str();
    }

   private:
    void note_vars(const RegSet &s) {
        for (const auto &[n, d] : s) {
            auto [it, fresh] = vars_.emplace(n, d);
            if (!fresh && it->second != d) {
                throw DomainError("variable " + n + " used with two dimensions");
            }
        }
    }

    std::string fresh(const std::string &stem) {
        for (int k = 0;; k++) {
            std::string name = stem + std::to_string(k);
            if (!proj_defs_.count(name)) {
                return name;
            }
        }
    }

    // Returns the projection as it will be printed.
    Projection prepare(const Projection &p) {
        std::vector<std::string> listed = p.listed.empty() ? p.dom.names() : p.listed;
        std::vector<int> ds;
        for (const auto &n : listed) {
            ds.push_back(p.dom.dim_of(n));
        }
        if (!p.label.empty() && !proj_defs_.count(p.label)) {
            try {
                Projection again = Projection::from_matrix(listed, ds, base_.projector(p.label, ds), p.label);
                if (same_bits(again.space.basis(), p.space.basis())) {
                    return again;
                }
            } catch (const Error &) {
            }
        }
        Projection q = p;
        q.listed = listed;
        Matrix basis = q.listed_basis();
        if (!p.label.empty()) {
            auto it = proj_defs_.find(p.label);
            if (it == proj_defs_.end() || (it->second.first == ds && same_bits(it->second.second, basis))) {
                q.label = p.label;
            }
        }
        if (q.label.empty() || q.label != p.label) {
            q.label.clear();
            for (const auto &[name, def] : proj_defs_) {
                if (def.first == ds && same_bits(def.second, basis)) {
                    q.label = name;
                }
            }
            if (q.label.empty()) {
                q.label = fresh(p.label.empty() ? "P" : p.label + "_");
            }
        }
        if (!proj_defs_.count(q.label)) {
            proj_defs_[q.label] = {ds, basis};
            std::string d = "(define-proj " + q.label + " " + dims_text(ds) + " (basis";
            for (Index c = 0; c < basis.cols(); c++) {
                d += " " + vec_text(basis.col(c));
            }
            defs_.push_back(d + "))");
        }
        return q;
    }

    Formula relabel(const Formula &f) {
        switch (f->kind) {
            case FKind::Proj:
                return fm::proj(prepare(*f->proj));
            case FKind::And:
                return fm::conj(relabel(f->lhs), relabel(f->rhs));
            case FKind::Or:
                return fm::disj(relabel(f->lhs), relabel(f->rhs));
            case FKind::Star:
                return fm::star(relabel(f->lhs), relabel(f->rhs));
            case FKind::Imp:
                return fm::imp(relabel(f->lhs), relabel(f->rhs));
            default:
                return f;
        }
    }

    std::string formula(const Formula &f) {
        note_vars(free_vars(f));
        return to_string(relabel(f));
    }

    void gates(const Program &p) {
        if (p->kind == ProgKind::Apply) {
            const Gate &g = p->gate;
            bool ok = false;
            try {
                ok = same_bits(base_.gate(g.name, g.dims).matrix, g.matrix);
            } catch (const Error &) {
            }
            if (!ok) {
                auto [it, fresh] = gate_defs_.emplace(g.name, g.matrix);
                if (fresh) {
                    defs_.push_back("(define-gate " + g.name + " " + dims_text(g.dims) + " " + mat_text(g.matrix) + ")");
                } else if (!same_bits(it->second, g.matrix)) {
                    throw DomainError("two different gates named " + g.name);
                }
            }
        }
        if (p->kind == ProgKind::If || p->kind == ProgKind::While) {
            const Measurement &m = p->meas;
            bool ok = false;
            try {
                auto again = base_.measurement(m.name, m.dims).projectors;
                ok = again.size() == m.projectors.size();
                for (size_t k = 0; ok && k < again.size(); k++) {
                    ok = same_bits(again[k], m.projectors[k]);
                }
            } catch (const Error &) {
            }
            if (!ok && meas_defs_.insert(m.name).second) {
                std::string d = "(define-meas " + m.name + " " + dims_text(m.dims) + " (outcomes";
                for (const auto &pk : m.projectors) {
                    d += " " + mat_text(pk);
                }
                defs_.push_back(d + "))");
            }
        }
        for (const auto &c : p->children) {
            gates(c);
        }
    }

    std::string program(const Program &p) {
        note_vars(vars(p));
        gates(p);
        return to_string(p);
    }

    std::string evidence(const ProofNode &n) {
        const Evidence &ev = n.evidence;
        std::vector<std::string> items;
        if (!ev.primary.empty()) {
            items.push_back(names_text("primary", ev.primary));
        }
        if (!ev.auxiliary.empty()) {
            items.push_back(names_text("auxiliary", ev.auxiliary));
        }
        if (ev.op) {
            const auto &op = *ev.op;
            note_vars(RegSet::of(ev.op_targets, op.dims));
            bool ok = false;
            try {
                auto again = base_.channel(op.name, op.dims).kraus;
                ok = again.size() == op.kraus.size();
                for (size_t k = 0; ok && k < again.size(); k++) {
                    ok = same_bits(again[k], op.kraus[k]);
                }
            } catch (const Error &) {
            }
            if (!ok && op_defs_.insert(op.name).second) {
                std::string d = "(define-op " + op.name + " " + dims_text(op.dims) + " (kraus";
                for (const auto &k : op.kraus) {
                    d += " " + mat_text(k);
                }
                defs_.push_back(d + "))");
            }
            items.push_back("(op " + op.name + " " + names_text("targets", ev.op_targets) + ")");
        }
        if (!ev.source.empty()) {
            items.push_back("(source \"" + ev.source + "\")");
        }
        if (n.rule == "Import" || ev.samples != Evidence{}.samples) {
            items.push_back("(samples " + std::to_string(ev.samples) + ")");
        }
        if (n.rule == "Import" || ev.seed != Evidence{}.seed) {
            items.push_back("(seed " + std::to_string(ev.seed) + ")");
        }
        if (items.empty()) {
            return "";
        }
        std::string out = "(evidence";
        for (const auto &i : items) {
            out += " " + i;
        }
        return out + ")";
    }

    static std::string quote(const std::string &s) {
        if (s.find('"') != std::string::npos) {
            throw DomainError("text cannot contain '\"': " + s);
        }
        return "\"" + s + "\"";
    }

    void node(const ProofNode &n, int depth, std::string &out) {
        std::string pad(2 * depth, ' ');
        std::string in = pad + "  ";
        out += pad + "(rule " + n.rule + "\n";
        out += in + "(pre " + quote(formula(n.concl.pre)) + ")\n";
        out += in + "(prog " + quote(program(n.concl.prog)) + ")\n";
        out += in + "(post " + quote(formula(n.concl.post)) + ")";
        std::string ev = evidence(n);
        if (!ev.empty()) {
            out += "\n" + in + ev;
        }
        if (!n.premises.empty()) {
            out += "\n" + in + "(premises";
            for (const auto &p : n.premises) {
                out += "\n";
                node(p, depth + 2, out);
            }
            out += ")";
        }
        out += ")";
        if (depth == 0) {
            out += "\n";
        }
    }

    const Manifest &base_;
    std::map<std::string, int> vars_;
    std::vector<std::string> defs_;
    std::map<std::string, std::pair<std::vector<int>, Matrix>> proj_defs_;
    std::map<std::string, Matrix> gate_defs_;
    std::set<std::string> meas_defs_;
    std::set<std::string> op_defs_;
};

bool identical_formula(const Formula &a, const Formula &b) {
    if (a->kind != b->kind || a->set != b->set) {
        return false;
    }
    if (a->kind == FKind::Proj) {
        return a->proj->dom == b->proj->dom && same_bits(a->proj->space.basis(), b->proj->space.basis());
    }
    if (a->lhs) {
        return identical_formula(a->lhs, b->lhs) && identical_formula(a->rhs, b->rhs);
    }
    return true;
}

bool identical_program(const Program &a, const Program &b);

bool identical_leaf(const Program &a, const Program &b) {
    if (a->kind != b->kind || a->targets != b->targets || a->children.size() != b->children.size()) {
        return false;
    }
    if (a->kind == ProgKind::Apply &&
        (a->gate.name != b->gate.name || !same_bits(a->gate.matrix, b->gate.matrix))) {
        return false;
    }
    if (a->kind == ProgKind::If || a->kind == ProgKind::While) {
        if (a->meas.projectors.size() != b->meas.projectors.size()) {
            return false;
        }
        for (size_t k = 0; k < a->meas.projectors.size(); k++) {
            if (!same_bits(a->meas.projectors[k], b->meas.projectors[k])) {
                return false;
            }
        }
    }
    for (size_t k = 0; k < a->children.size(); k++) {
        if (!identical_program(a->children[k], b->children[k])) {
            return false;
        }
    }
    return true;
}

bool identical_program(const Program &a, const Program &b) {
    auto fa = flatten(a);
    auto fb = flatten(b);
    if (fa.size() != fb.size()) {
        return false;
    }
    for (size_t k = 0; k < fa.size(); k++) {
        if (!identical_leaf(fa[k], fb[k])) {
            return false;
        }
    }
    return true;
}

}  // namespace

ProofScript parse_proof_script(const std::string &text, const Manifest &base) {
    return ScriptReader(base).read(text);
}

ProofNode parse_proof(const std::string &text, const Manifest &base) {
    return parse_proof_script(text, base).root;
}

std::string print_proof(const ProofNode &root, const Manifest &base) {
    return ScriptWriter(base).write(root);
}

bool identical(const ProofNode &a, const ProofNode &b) {
    if (a.rule != b.rule || a.premises.size() != b.premises.size()) {
        return false;
    }
    if (!identical_formula(a.concl.pre, b.concl.pre) || !identical_formula(a.concl.post, b.concl.post) ||
        !identical_program(a.concl.prog, b.concl.prog)) {
        return false;
    }
    const Evidence &x = a.evidence;
    const Evidence &y = b.evidence;
    if (x.primary != y.primary || x.auxiliary != y.auxiliary || x.op_targets != y.op_targets ||
        x.source != y.source || x.samples != y.samples || x.seed != y.seed || x.op.has_value() != y.op.has_value()) {
        return false;
    }
    if (x.op) {
        if (x.op->kraus.size() != y.op->kraus.size()) {
            return false;
        }
        for (size_t k = 0; k < x.op->kraus.size(); k++) {
            if (!same_bits(x.op->kraus[k], y.op->kraus[k])) {
                return false;
            }
        }
    }
    for (size_t k = 0; k < a.premises.size(); k++) {
        if (!identical(a.premises[k], b.premises[k])) {
            return false;
        }
    }
    return true;
}

}  // namespace qsl
