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

#include "qsl/proof.hpp"

#include <cmath>

#include "qsl/entailment.hpp"
#include "qsl/modification.hpp"
#include "qsl/oracle.hpp"

namespace qsl {

std::string to_string(const Judgment &j) {
    return "{" + to_string(j.pre) + "} " + to_string(j.prog) + " {" + to_string(j.post) + "}";
}

size_t count_nodes(const ProofNode &n) {
    size_t c = 1;
    for (const auto &p : n.premises) {
        c += count_nodes(p);
    }
    return c;
}

const char *status_name(NodeStatus s) {
    switch (s) {
        case NodeStatus::Pass:
            return "pass";
        case NodeStatus::Fail:
            return "fail";
        case NodeStatus::Unproved:
            return "unproved-entailment";
        case NodeStatus::Assumed:
            return "assumed";
    }
    return "?";
}

std::string NodeReport::first_failure() const {
    for (const auto &c : conditions) {
        if (!c.ok) {
            return c.detail.empty() ? c.name : c.name + ": " + c.detail;
        }
    }
    return "";
}

const std::vector<std::string> &rule_names() {
    static const std::vector<std::string> names = {"Skip", "Init", "Unit",  "Perm", "Seq",    "RIf",
                                                   "RLoop", "Weak", "Conj", "Disj", "Const",  "Frame",
                                                   "UnCR", "FrameU", "PEPR", "Import"};
    return names;
}

bool is_maximally_entangled(const Projection &p, const std::vector<std::string> &primary,
                            const std::vector<std::string> &auxiliary) {
    if (p.rank() != 1) {
        return false;
    }
    QState s = QState::pure(p.dom, p.space.basis().col(0));
    RegSet a, b;
    for (const auto &n : primary) {
        a.insert(n, p.dom.dim_of(n));
    }
    for (const auto &n : auxiliary) {
        b.insert(n, p.dom.dim_of(n));
    }
    if (a.unite(b) != p.dom || !a.disjoint(b)) {
        return false;
    }
    auto mixed = [](const QState &r) {
        Index d = r.domain().dim();
        return (r.matrix() - Matrix::Identity(d, d) / (double)d).norm() <= tolerance();
    };
    return mixed(s.restrict(a)) && mixed(s.restrict(b));
}

Projection pepr_precondition(const Projection &psi, const Projection &mes, const std::vector<std::string> &primary,
                             const std::vector<std::string> &auxiliary, const Projection &post) {
    std::vector<std::string> order = primary;
    order.insert(order.end(), auxiliary.begin(), auxiliary.end());
    RegSet w = psi.dom;
    if (mes.dom != w) {
        throw DomainError("entangled pre and post live on different registers");
    }
    std::vector<int> dims;
    std::vector<int> pdims;
    for (const auto &n : order) {
        dims.push_back(w.dim_of(n));
    }
    for (const auto &n : primary) {
        pdims.push_back(w.dim_of(n));
    }
    Index n = total_dim(pdims);
    size_t k = primary.size();

    // |mes> = (I (x) V) sum_j |j>|j> / sqrt(n)
    Vector phi = permute_rows(mes.space.basis(), w.dims(), w.positions(order)).col(0);
    Matrix c(n, n);
    for (Index j = 0; j < n; j++) {
        for (Index l = 0; l < n; l++) {
            c(j, l) = phi(j * n + l);
        }
    }
    Matrix v = std::sqrt((double)n) * c.transpose();

    Matrix q = permute_factors(post.matrix(), post.dom.dims(), post.dom.positions(primary));
    Matrix q_aux = v * q.conjugate() * v.adjoint();

    Matrix psi_listed = permute_factors(psi.matrix(), w.dims(), w.positions(order));
    std::vector<int> aux_pos, prim_pos;
    for (size_t i = 0; i < k; i++) {
        prim_pos.push_back((int)i);
        aux_pos.push_back((int)(k + i));
    }
    Matrix x = sandwich(psi_listed, dims, aux_pos, q_aux);
    Matrix r = (double)n * partial_trace(x, dims, prim_pos);
    return Projection::from_listed(primary, pdims, Subspace::eigenspace_one(r));
}

namespace {

class Checker {
   public:
    Checker(const ProofNode &node, const std::string &path) : node_(node) {
        report_.path = path;
        report_.rule = node.rule;
    }

    NodeReport run() {
        const auto &j = node_.concl;
        need(in_res(j.pre) && in_res(j.post), "judgment formulas in the restriction-closed fragment");
        const std::string &r = node_.rule;
        if (r == "Skip") {
            skip();
        } else if (r == "Init" || r == "Unit") {
            modification(r == "Init" ? ProgKind::Init : ProgKind::Apply);
        } else if (r == "Perm") {
            perm();
        } else if (r == "Seq") {
            seq();
        } else if (r == "RIf") {
            rif();
        } else if (r == "RLoop") {
            rloop();
        } else if (r == "Weak") {
            weak();
        } else if (r == "Conj" || r == "Disj") {
            conj_disj(r == "Conj" ? FKind::And : FKind::Or);
        } else if (r == "Const") {
            constancy();
        } else if (r == "Frame") {
            frame();
        } else if (r == "UnCR") {
            uncr();
        } else if (r == "FrameU") {
            frame_u();
        } else if (r == "PEPR") {
            pepr();
        } else if (r == "Import") {
            import();
        } else {
            need(false, "known rule", "no rule named " + r);
        }
        if (report_.status == NodeStatus::Pass) {
            for (const auto &c : report_.conditions) {
                if (!c.ok) {
                    report_.status = NodeStatus::Fail;
                    break;
                }
            }
        }
        return report_;
    }

   private:
    bool need(bool ok, const std::string &name, const std::string &detail = "") {
        report_.conditions.push_back(Condition{name, ok, ok ? "" : detail});
        return ok;
    }

    bool premises(size_t n) {
        return need(node_.premises.size() == n, std::to_string(n) + " premise(s)",
                    "found " + std::to_string(node_.premises.size()));
    }

    const Judgment &prem(size_t k) const {
        return node_.premises[k].concl;
    }

    bool same_formula(const Formula &a, const Formula &b, const std::string &what) {
        return need(equal(a, b), what, to_string(a) + " vs " + to_string(b));
    }

    bool same_program(const Program &a, const Program &b, const std::string &what) {
        return need(equal(a, b), what, to_string(a) + " vs " + to_string(b));
    }

    bool kind(ProgKind k, const std::string &what) {
        return need(node_.concl.prog->kind == k, "program is " + what, to_string(node_.concl.prog));
    }

    void skip() {
        premises(0);
        kind(ProgKind::Skip, "skip");
        same_formula(node_.concl.pre, node_.concl.post, "pre equals post");
    }

    void modification(ProgKind k) {
        premises(0);
        if (!kind(k, k == ProgKind::Init ? "an initialization" : "a unitary")) {
            return;
        }
        auto m = modify(node_.concl.post, Command::of(node_.concl.prog));
        if (!need(m.has_value(), "modification of the post is defined", to_string(node_.concl.post))) {
            return;
        }
        same_formula(node_.concl.pre, *m, "pre equals the modified post");
    }

    void perm() {
        premises(0);
        const auto &p = node_.concl.prog;
        if (!kind(ProgKind::Apply, "a unitary") ||
            !need(p->gate.permutation.has_value(), "gate is a register permutation", p->gate.name)) {
            return;
        }
        std::map<std::string, std::string> sub;
        for (size_t k = 0; k < p->targets.size(); k++) {
            sub[p->targets[k]] = p->targets[(*p->gate.permutation)[k]];
        }
        same_formula(node_.concl.pre, rename(node_.concl.post, sub), "pre equals the renamed post");
    }

    void seq() {
        if (!premises(2)) {
            return;
        }
        same_formula(prem(0).post, prem(1).pre, "intermediate assertions agree");
        same_formula(node_.concl.pre, prem(0).pre, "pre matches the first premise");
        same_formula(node_.concl.post, prem(1).post, "post matches the second premise");
        same_program(node_.concl.prog, prog::seq(prem(0).prog, prem(1).prog), "program is the sequence");
    }

    // phi * I_q for the guard register
    std::optional<Formula> split_guard(const Formula &f, const RegSet &q) {
        if (f->kind != FKind::Star) {
            return std::nullopt;
        }
        const Formula &g = f->rhs;
        bool ident = (g->kind == FKind::Proj && g->proj->dom == q && g->proj->rank() == q.dim()) ||
                     (g->kind == FKind::D && g->set == q);
        if (!ident) {
            return std::nullopt;
        }
        return f->lhs;
    }

    Formula outcome_atom(const Program &p, size_t k) {
        return fm::proj(Projection::from_matrix(p->targets, p->dims, p->meas.projectors[k]));
    }

    void rif() {
        const auto &p = node_.concl.prog;
        if (!kind(ProgKind::If, "a measurement branch")) {
            return;
        }
        if (!premises(p->children.size())) {
            return;
        }
        RegSet q = RegSet::of(p->targets, p->dims);
        auto phi = split_guard(node_.concl.pre, q);
        if (!need(phi.has_value(), "pre has the form phi * I on the measured register", to_string(node_.concl.pre))) {
            return;
        }
        need(in_cm(node_.concl.post), "post is closed under mixtures", to_string(node_.concl.post));
        for (size_t k = 0; k < p->children.size(); k++) {
            std::string tag = "branch " + std::to_string(k) + ": ";
            same_formula(prem(k).pre, fm::star(*phi, outcome_atom(p, k)), tag + "pre is phi * outcome projector");
            same_program(prem(k).prog, p->children[k], tag + "program");
            same_formula(prem(k).post, node_.concl.post, tag + "post");
        }
    }

    void rloop() {
        const auto &p = node_.concl.prog;
        if (!kind(ProgKind::While, "a loop") || !premises(1)) {
            return;
        }
        RegSet q = RegSet::of(p->targets, p->dims);
        auto phi = split_guard(node_.concl.pre, q);
        if (!need(phi.has_value(), "pre has the form phi * I on the guard register", to_string(node_.concl.pre))) {
            return;
        }
        need(in_cm(*phi), "invariant is closed under mixtures", to_string(*phi));
        same_formula(node_.concl.post, fm::conj(*phi, outcome_atom(p, 0)), "post is invariant and exit projector");
        same_formula(prem(0).pre, fm::star(*phi, outcome_atom(p, 1)), "body pre is invariant * continue projector");
        same_formula(prem(0).post, node_.concl.pre, "body post restores the loop pre");
        same_program(prem(0).prog, p->children[0], "premise program is the body");
    }

    void entail(const Formula &a, const Formula &b, const std::string &what) {
        Entailment e = entails_global(a, b);
        if (e.verdict == Verdict::Unknown) {
            report_.conditions.push_back(Condition{what, true, "unproved: " + e.reason});
            report_.status = NodeStatus::Unproved;
            return;
        }
        need(e.verdict == Verdict::Proved, what, e.reason);
    }

    void weak() {
        if (!premises(1)) {
            return;
        }
        same_program(node_.concl.prog, prem(0).prog, "same program");
        entail(node_.concl.pre, prem(0).pre, "pre entails premise pre");
        entail(prem(0).post, node_.concl.post, "premise post entails post");
    }

    void conj_disj(FKind k) {
        if (!premises(2)) {
            return;
        }
        same_program(node_.concl.prog, prem(0).prog, "same program (first)");
        same_program(node_.concl.prog, prem(1).prog, "same program (second)");
        Formula pre = k == FKind::And ? fm::conj(prem(0).pre, prem(1).pre) : fm::disj(prem(0).pre, prem(1).pre);
        Formula post = k == FKind::And ? fm::conj(prem(0).post, prem(1).post) : fm::disj(prem(0).post, prem(1).post);
        same_formula(node_.concl.pre, pre, "pre combines the premises");
        same_formula(node_.concl.post, post, "post combines the premises");
    }

    void constancy() {
        if (!premises(1)) {
            return;
        }
        const auto &c = node_.concl;
        if (!need(c.pre->kind == FKind::And && c.post->kind == FKind::And, "pre and post are conjunctions")) {
            return;
        }
        Formula mu = c.pre->rhs;
        same_formula(c.post->rhs, mu, "same added conjunct");
        same_formula(c.pre->lhs, prem(0).pre, "premise pre");
        same_formula(c.post->lhs, prem(0).post, "premise post");
        same_program(c.prog, prem(0).prog, "same program");
        need(free_vars(mu).disjoint(vars(c.prog)), "added conjunct does not mention program variables",
             free_vars(mu).str() + " meets " + vars(c.prog).str());
    }

    void frame() {
        if (!premises(1)) {
            return;
        }
        const auto &c = node_.concl;
        if (!need(c.pre->kind == FKind::Star && c.post->kind == FKind::Star, "pre and post are separating conjunctions")) {
            return;
        }
        Formula mu = c.pre->rhs;
        same_formula(c.post->rhs, mu, "same frame");
        same_formula(c.pre->lhs, prem(0).pre, "premise pre");
        same_formula(c.post->lhs, prem(0).post, "premise post");
        same_program(c.prog, prem(0).prog, "same program");
        RegSet s = vars(c.prog);
        need(free_vars(mu).disjoint(s), "frame does not mention program variables",
             free_vars(mu).str() + " meets " + s.str());
        const Formula &phi = prem(0).pre;
        const Formula &psi = prem(0).post;
        bool covered = free_vars(psi).unite(s).subset_of(free_vars(phi));
        need(covered || in_sp(psi), "post variables and program variables within pre variables, or post has a least state");
    }

    void uncr() {
        if (!premises(1)) {
            return;
        }
        const auto &ev = node_.evidence;
        if (!need(ev.op.has_value(), "operation given")) {
            return;
        }
        const auto &op = *ev.op;
        Matrix sum = Matrix::Zero(total_dim(op.dims), total_dim(op.dims));
        for (const auto &e : op.kraus) {
            sum += e.adjoint() * e;
        }
        need(loewner_leq(sum, Matrix::Identity(sum.rows(), sum.cols()), tolerance()), "operation is trace non-increasing");
        RegSet q = RegSet::of(ev.op_targets, op.dims);
        need(q.disjoint(vars(node_.concl.prog)), "operation register disjoint from the program");
        same_program(node_.concl.prog, prem(0).prog, "same program");
        auto pre = e_modify(prem(0).pre, ev.op_targets, op);
        auto post = e_modify(prem(0).post, ev.op_targets, op);
        if (need(pre.has_value(), "modified pre is defined")) {
            same_formula(node_.concl.pre, *pre, "pre is the modified premise pre");
        }
        if (need(post.has_value(), "modified post is defined")) {
            same_formula(node_.concl.post, *post, "post is the modified premise post");
        }
    }

    void frame_u() {
        if (!premises(1)) {
            return;
        }
        const auto &c = node_.concl;
        const auto &p = prem(0);
        if (!need(p.pre->kind == FKind::Top, "premise pre is top") ||
            !need(p.post->kind == FKind::U, "premise post is a uniformity atom") ||
            !need(c.pre->kind == FKind::U && c.post->kind == FKind::U, "conclusion is between uniformity atoms")) {
            return;
        }
        same_program(c.prog, p.prog, "same program");
        const RegSet &s1 = p.post->set;
        const RegSet &s2 = c.pre->set;
        need(s2.disjoint(vars(c.prog).unite(s1)), "new register disjoint from program and old register");
        need(c.post->set == s1.unite(s2), "post register is the union");
        // the same step through Frame and Weak
        ProofNode framed{"Frame",
                         Judgment{fm::star(fm::top(), fm::U(s2)), c.prog, fm::star(p.post, fm::U(s2))},
                         {},
                         {node_.premises[0]}};
        NodeReport fr = check_rule(framed, report_.path + "/frame");
        need(fr.status == NodeStatus::Pass, "expansion through Frame", fr.first_failure());
        ProofNode weakened{"Weak", c, {}, {framed}};
        NodeReport wr = check_rule(weakened, report_.path + "/weak");
        need(wr.status == NodeStatus::Pass, "expansion through Weak", wr.first_failure());
    }

    void pepr() {
        if (!premises(1)) {
            return;
        }
        const auto &c = node_.concl;
        const auto &p = prem(0);
        const auto &ev = node_.evidence;
        same_program(c.prog, p.prog, "same program");
        if (!need(!ev.primary.empty() && ev.primary.size() == ev.auxiliary.size(), "registers paired")) {
            return;
        }
        if (!need(p.pre->kind == FKind::Proj && p.post->kind == FKind::Proj && c.post->kind == FKind::Proj &&
                      c.pre->kind == FKind::Proj,
                  "all four assertions are projections")) {
            return;
        }
        const Projection &psi = *p.pre->proj;
        const Projection &mes = *p.post->proj;
        const Projection &q = *c.post->proj;
        RegSet prim, aux;
        try {
            for (const auto &n : ev.primary) {
                prim.insert(n, psi.dom.dim_of(n));
            }
            for (const auto &n : ev.auxiliary) {
                aux.insert(n, psi.dom.dim_of(n));
            }
        } catch (const DomainError &e) {
            need(false, "registers inside the entangled pre", e.what());
            return;
        }
        bool dims_ok = prim.size() == ev.primary.size() && aux.size() == ev.auxiliary.size();
        for (size_t k = 0; dims_ok && k < ev.primary.size(); k++) {
            dims_ok = prim.dim_of(ev.primary[k]) == aux.dim_of(ev.auxiliary[k]);
        }
        need(dims_ok, "paired registers have equal dimensions");
        need(prim.disjoint(aux), "registers are disjoint");
        need(vars(c.prog).subset_of(prim), "program acts within the primary register");
        need(psi.dom == prim.unite(aux), "entangled pre lives on both registers");
        need(mes.dom == prim.unite(aux), "entangled post lives on both registers");
        need(q.dom == prim, "post lives on the primary register");
        bool mes_ok = is_maximally_entangled(mes, ev.primary, ev.auxiliary);
        need(mes_ok, "entangled post is maximally entangled");
        if (report_.conditions.back().ok && dims_ok && psi.dom == mes.dom && q.dom == prim) {
            Projection r = pepr_precondition(psi, mes, ev.primary, ev.auxiliary, q);
            need(r.equals(*c.pre->proj), "pre is the computed precondition");
        }
    }

    void import() {
        premises(0);
        const auto &c = node_.concl;
        const auto &ev = node_.evidence;
        need(!ev.source.empty(), "source recorded");
        RegSet v = vars(c.prog).unite(free_vars(c.pre)).unite(free_vars(c.post));
        Validation val = validate_triple(c.pre, c.prog, c.post, v, ev.samples, ev.seed);
        need(val.ok, "sampled validation",
             val.counterexample ? "sample " + std::to_string(val.counterexample->index) + " fails " +
                                      val.counterexample->why.culprit
                                : "");
        need(val.samples > 0, "validation drew samples");
        if (val.ok && val.samples > 0 && !ev.source.empty()) {
            report_.status = NodeStatus::Assumed;
        }
    }

    const ProofNode &node_;
    NodeReport report_;
};

void walk(const ProofNode &n, const std::string &path, ProofReport &out) {
    for (size_t k = 0; k < n.premises.size(); k++) {
        walk(n.premises[k], path + "." + std::to_string(k), out);
    }
    out.nodes.push_back(check_rule(n, path));
}

}  // namespace

NodeReport check_rule(const ProofNode &node, const std::string &path) {
    try {
        return Checker(node, path).run();
    } catch (const Error &e) {
        NodeReport r;
        r.path = path;
        r.rule = node.rule;
        r.status = NodeStatus::Fail;
        r.conditions.push_back(Condition{"well-formed step", false, e.what()});
        return r;
    }
}

ProofReport check_proof(const ProofNode &root) {
    ProofReport out;
    walk(root, "root", out);
    bool fail = false, unproved = false;
    for (const auto &n : out.nodes) {
        fail |= n.status == NodeStatus::Fail;
        unproved |= n.status == NodeStatus::Unproved;
        out.assumed += n.status == NodeStatus::Assumed;
    }
    out.overall = fail       ? NodeStatus::Fail
                  : unproved ? NodeStatus::Unproved
                  : out.assumed ? NodeStatus::Assumed
                                : NodeStatus::Pass;
    return out;
}

}  // namespace qsl
