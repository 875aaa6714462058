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

#include "qsl/casestudies.hpp"

#include <Eigen/Eigenvalues>

#include "qsl/modification.hpp"
#include "qsl/oracle.hpp"
#include "qsl/syntax.hpp"

namespace qsl::cases {

namespace {

Formula F(const std::string &text, const Manifest &m) {
    return parse_formula(text, m);
}

std::string list(const std::vector<std::string> &names) {
    std::string out = "[";
    for (size_t k = 0; k < names.size(); k++) {
        out += (k ? ", " : "") + names[k];
    }
    return out + "]";
}

Program gate(const Manifest &m, const std::string &name, const std::vector<std::string> &targets) {
    std::vector<int> dims;
    for (const auto &t : targets) {
        dims.push_back(m.var_dim(t));
    }
    return prog::apply(m.gate(name, dims), targets);
}

Program init(const Manifest &m, const std::string &v) {
    return prog::init(v, m.var_dim(v));
}

Program measure(const Manifest &m, const std::vector<std::string> &targets, std::vector<Program> branches) {
    std::vector<int> dims;
    for (const auto &t : targets) {
        dims.push_back(m.var_dim(t));
    }
    return prog::if_measure(m.measurement("M", dims), targets, std::move(branches));
}

ProofNode leaf(const std::string &rule, Formula pre, Program p, Formula post) {
    return ProofNode{rule, Judgment{std::move(pre), std::move(p), std::move(post)}, {}, {}};
}

ProofNode step(const std::string &rule, Formula pre, Formula post, ProofNode premise) {
    Program p = premise.concl.prog;
    return ProofNode{rule, Judgment{std::move(pre), p, std::move(post)}, {}, {std::move(premise)}};
}

// Backward Unit/Init chain from post through a straight-line program.
ProofNode straight_line(const Program &p, const Formula &post) {
    std::vector<Program> items = flatten(p);
    std::vector<ProofNode> nodes(items.size());
    Formula cur = post;
    for (size_t k = items.size(); k-- > 0;) {
        auto pre = modify(cur, Command::of(items[k]));
        if (!pre) {
            throw DomainError("modification undefined for " + to_string(items[k]));
        }
        nodes[k] = leaf(items[k]->kind == ProgKind::Init ? "Init" : "Unit", *pre, items[k], cur);
        cur = *pre;
    }
    return seq_chain(nodes);
}

Formula conj_all(const std::vector<Formula> &fs) {
    Formula acc = fs[0];
    for (size_t k = 1; k < fs.size(); k++) {
        acc = fm::conj(acc, fs[k]);
    }
    return acc;
}

Projection tensor(const Projection &a, const Projection &b) {
    std::vector<std::string> names = a.listed.empty() ? a.dom.names() : a.listed;
    std::vector<std::string> nb = b.listed.empty() ? b.dom.names() : b.listed;
    names.insert(names.end(), nb.begin(), nb.end());
    std::vector<int> dims;
    RegSet all = a.dom.unite(b.dom);
    for (const auto &n : names) {
        dims.push_back(all.dim_of(n));
    }
    return Projection::from_listed(names, dims, Subspace(kron(a.listed_basis(), b.listed_basis())));
}

std::string indexed(const std::string &stem, int n, int i) {
    return n == 1 ? stem : stem + std::to_string(i);
}

// {top} block {U[q]} for every copy, widened by FrameU and chained by Seq.
ProofNode uniform_chain(const std::vector<ProofNode> &single, const std::vector<std::string> &regs, const Manifest &m) {
    std::vector<ProofNode> parts;
    for (size_t i = 0; i < single.size(); i++) {
        if (i == 0) {
            parts.push_back(single[0]);
            continue;
        }
        std::vector<std::string> before(regs.begin(), regs.begin() + (long)i);
        std::vector<std::string> upto(regs.begin(), regs.begin() + (long)i + 1);
        parts.push_back(step("FrameU", F("U" + list(before), m), F("U" + list(upto), m), single[i]));
    }
    return seq_chain(parts);
}

}  // namespace

std::string copy_name(const std::string &v) {
    return v + "'";
}

ProofNode seq_chain(const std::vector<ProofNode> &parts) {
    if (parts.empty()) {
        throw StructuralError("empty chain");
    }
    ProofNode acc = parts[0];
    for (size_t k = 1; k < parts.size(); k++) {
        Judgment j{acc.concl.pre, prog::seq(acc.concl.prog, parts[k].concl.prog), parts[k].concl.post};
        acc = ProofNode{"Seq", j, {}, {acc, parts[k]}};
    }
    return acc;
}

// ---- one-time pad ----

PadRegisters qotp_registers(int n, int i) {
    return {indexed("a", n, i), indexed("b", n, i), indexed("q", n, i)};
}

Manifest qotp_manifest(int n) {
    Manifest m;
    for (int i = 1; i <= n; i++) {
        auto r = qotp_registers(n, i);
        for (const auto &v : {r.a, r.b, r.q}) {
            m.declare(v, 2);
        }
    }
    return m;
}

Program qotp_block(const PadRegisters &r, const Manifest &m) {
    Program keygen = prog::seq({init(m, r.a), init(m, r.b), gate(m, "H", {r.a}), gate(m, "H", {r.b}),
                                measure(m, {r.a, r.b}, {prog::skip(), prog::skip(), prog::skip(), prog::skip()})});
    Program enc = measure(m, {r.a, r.b},
                          {prog::skip(), gate(m, "Z", {r.q}), gate(m, "X", {r.q}),
                           prog::seq(gate(m, "Z", {r.q}), gate(m, "X", {r.q}))});
    return prog::seq(keygen, enc);
}

Program build_qotp(int n) {
    if (n < 1) {
        throw DomainError("need at least one copy");
    }
    Manifest m = qotp_manifest(n);
    std::vector<Program> blocks;
    for (int i = 1; i <= n; i++) {
        blocks.push_back(qotp_block(qotp_registers(n, i), m));
    }
    return prog::seq(blocks);
}

ProofNode qotp_proof(int n) {
    Manifest m = qotp_manifest(n);
    std::vector<ProofNode> single;
    std::vector<std::string> data;
    for (int i = 1; i <= n; i++) {
        auto r = qotp_registers(n, i);
        ProofNode imp = leaf("Import", F("top", m), qotp_block(r, m), F("U[" + r.q + "]", m));
        imp.evidence.source = "single-copy one-time pad security";
        imp.evidence.seed = (uint64_t)i;
        single.push_back(imp);
        data.push_back(r.q);
    }
    return uniform_chain(single, data, m);
}

ProofNode qotp1_proof() {
    Manifest m = qotp_manifest(1);
    auto r = qotp_registers(1, 1);
    Program prep = prog::seq({init(m, r.a), init(m, r.b), gate(m, "H", {r.a}), gate(m, "H", {r.b})});
    Program rest = prog::seq(measure(m, {r.a, r.b}, {prog::skip(), prog::skip(), prog::skip(), prog::skip()}),
                             measure(m, {r.a, r.b},
                                     {prog::skip(), gate(m, "Z", {r.q}), gate(m, "X", {r.q}),
                                      prog::seq(gate(m, "Z", {r.q}), gate(m, "X", {r.q}))}));
    Formula key = F("proj plus on [a] /\\ proj plus on [b]", m);
    ProofNode chain = straight_line(prep, key);
    ProofNode weak = step("Weak", F("top", m), key, chain);
    ProofNode imp = leaf("Import", key, rest, F("U[q]", m));
    imp.evidence.source = "one-time pad branching on a uniform key";
    return seq_chain({weak, imp});
}

// ---- secret sharing ----

ShareRegisters qss_registers(int n, int i) {
    return {indexed("p", n, i), indexed("q", n, i), indexed("r", n, i)};
}

Manifest qss_manifest(int n) {
    Manifest m;
    for (int i = 1; i <= n; i++) {
        auto r = qss_registers(n, i);
        for (const auto &v : {r.p, r.q, r.r}) {
            m.declare(v, 3);
        }
    }
    return m;
}

Program share_block(const ShareRegisters &r, const Manifest &m) {
    return prog::seq({init(m, r.q), init(m, r.r), gate(m, "U_enc", {r.p, r.q, r.r})});
}

Program build_qss(int n) {
    if (n < 1) {
        throw DomainError("need at least one copy");
    }
    Manifest m = qss_manifest(n);
    std::vector<Program> blocks;
    for (int i = 1; i <= n; i++) {
        blocks.push_back(share_block(qss_registers(n, i), m));
    }
    return prog::seq(blocks);
}

ProofNode share_proof(const ShareRegisters &r, const Manifest &m) {
    Formula ps = F("proj PS on " + list({r.p, r.q, r.r}), m);
    ProofNode chain = straight_line(share_block(r, m), ps);
    return step("Weak", F("top", m), ps, chain);
}

ProofNode qss_proof(int n) {
    Manifest m = qss_manifest(n);
    std::vector<ProofNode> single;
    std::vector<std::string> shares;
    for (int i = 1; i <= n; i++) {
        auto r = qss_registers(n, i);
        ProofNode enc = share_proof(r, m);
        single.push_back(step("Weak", F("top", m), F("U[" + r.q + "]", m), enc));
        shares.push_back(r.q);
    }
    return uniform_chain(single, shares, m);
}

Manifest qss_e_manifest(int n) {
    Manifest m = qss_manifest(1);
    m.declare("c", 2);
    for (int i = 1; i <= n; i++) {
        m.declare("h" + std::to_string(i), 3);
    }
    return m;
}

Program eavesdrop_round(int i, const Manifest &m) {
    std::string h = "h" + std::to_string(i);
    Program steal_p = prog::seq({gate(m, "PERM_1_0", {"p", h}), gate(m, "U_rec", {"q", "r"}), gate(m, "PERM_1_0", {"p", "q"})});
    Program steal_q = prog::seq(gate(m, "PERM_1_0", {"q", h}), gate(m, "PERM_1_0", {"p", "r"}));
    return prog::seq({share_block({"p", "q", "r"}, m), init(m, "c"), gate(m, "H", {"c"}), measure(m, {"c"}, {steal_p, steal_q})});
}

Program build_qss_e(int n) {
    if (n < 1) {
        throw DomainError("need at least one round");
    }
    Manifest m = qss_e_manifest(n);
    std::vector<Program> rounds;
    for (int i = 1; i <= n; i++) {
        rounds.push_back(eavesdrop_round(i, m));
    }
    return prog::seq(rounds);
}

// Each round proves {top} round {U[h_i]} on its own; FrameU widens and Seq chains.
ProofNode qss_e_proof(int n) {
    Manifest m = qss_e_manifest(n);
    std::vector<ProofNode> rounds;
    std::vector<std::string> hs;
    for (int i = 1; i <= n; i++) {
        std::string h = "h" + std::to_string(i);
        hs.push_back(h);
        Formula after = F("U[" + h + "]", m);
        Formula phi = F("proj PS on [p, q, r]", m);
        ProofNode enc = share_proof({"p", "q", "r"}, m);

        Formula guarded = fm::star(phi, F("proj I on [c]", m));
        Program coin_prog = prog::seq(init(m, "c"), gate(m, "H", {"c"}));
        ProofNode coin = step("Weak", phi, guarded, straight_line(coin_prog, guarded));

        Program round = eavesdrop_round(i, m);
        Program branch = flatten(round).back();
        std::vector<ProofNode> arms;
        for (int k = 0; k < 2; k++) {
            Program arm = branch->children[k];
            auto items = flatten(arm);
            Formula moved = F(k == 0 ? "proj PS on [" + h + ", q, r]" : "proj PS on [p, " + h + ", r]", m);
            ProofNode perm = leaf("Perm", phi, items[0], moved);
            std::vector<ProofNode> parts = {step("Weak", phi, after, perm)};
            for (size_t s = 1; s < items.size(); s++) {
                parts.push_back(leaf("Unit", after, items[s], after));
            }
            ProofNode body = seq_chain(parts);
            Formula pre = fm::star(phi, F("proj M." + std::to_string(k) + " on [c]", m));
            arms.push_back(step("Weak", pre, after, body));
        }
        ProofNode rif{"RIf", Judgment{guarded, branch, after}, {}, arms};
        rounds.push_back(seq_chain({enc, coin, rif}));
    }
    return uniform_chain(rounds, hs, m);
}

// ---- variational circuit ----

IsingInstance IsingInstance::reference(double alpha, double beta, double gamma) {
    IsingInstance inst;
    inst.n = 2;
    inst.h = {{-1, -1}, {1, 1}};
    inst.jr = {{-1, 1}};
    inst.jc = {{-1}, {-1}};
    inst.alpha = alpha;
    inst.beta = beta;
    inst.gamma = gamma;
    return inst;
}

std::string IsingInstance::site(int i, int j) {
    return "q" + std::to_string(i) + std::to_string(j);
}

std::vector<std::string> IsingInstance::sites() const {
    std::vector<std::string> out;
    for (int i = 1; i <= n; i++) {
        for (int j = 1; j <= n; j++) {
            out.push_back(site(i, j));
        }
    }
    return out;
}

std::vector<std::string> IsingInstance::copies() const {
    std::vector<std::string> out;
    for (const auto &s : sites()) {
        out.push_back(copy_name(s));
    }
    return out;
}

Manifest vqa_manifest(const IsingInstance &inst) {
    if (inst.n < 1 || inst.n > 9) {
        throw DomainError("grid size must be between 1 and 9");
    }
    Manifest m;
    for (const auto &s : inst.sites()) {
        m.declare(s, 2);
        m.declare(copy_name(s), 2);
    }
    return m;
}

namespace {

std::string power(const std::string &g, double a) {
    return g + "^" + format_double(a);
}

void coupling(std::vector<Program> &out, const Manifest &m, int sign, const std::string &x, const std::string &y,
              double gamma) {
    if (sign == -1) {
        out.push_back(gate(m, "X", {x}));
        out.push_back(gate(m, "X", {y}));
    }
    out.push_back(gate(m, power("CZ", gamma), {x, y}));
    if (sign == -1) {
        out.push_back(gate(m, "X", {x}));
        out.push_back(gate(m, "X", {y}));
    }
}

}  // namespace

Program column_block(const IsingInstance &inst, int j, const Manifest &m) {
    std::vector<Program> out;
    for (int i = 1; i <= inst.n; i++) {
        out.push_back(gate(m, power("X", inst.alpha), {IsingInstance::site(i, j)}));
        if (inst.h[i - 1][j - 1] == 1) {
            out.push_back(gate(m, power("Z", inst.beta), {IsingInstance::site(i, j)}));
        }
    }
    for (int i = 1; i < inst.n; i++) {
        coupling(out, m, inst.jr[i - 1][j - 1], IsingInstance::site(i, j), IsingInstance::site(i + 1, j), inst.gamma);
    }
    return prog::seq(out);
}

Program row_block(const IsingInstance &inst, int i, const Manifest &m) {
    std::vector<Program> out;
    for (int j = 1; j < inst.n; j++) {
        coupling(out, m, inst.jc[i - 1][j - 1], IsingInstance::site(i, j), IsingInstance::site(i, j + 1), inst.gamma);
    }
    if (out.empty()) {
        return prog::skip();
    }
    return prog::seq(out);
}

Program build_vqa(const IsingInstance &inst) {
    Manifest m = vqa_manifest(inst);
    std::vector<Program> blocks;
    for (int j = 1; j <= inst.n; j++) {
        blocks.push_back(column_block(inst, j, m));
    }
    for (int i = 1; i <= inst.n; i++) {
        blocks.push_back(row_block(inst, i, m));
    }
    return prog::seq(blocks);
}

Matrix ising_hamiltonian(const IsingInstance &inst) {
    RegSet dom;
    for (const auto &s : inst.sites()) {
        dom.insert(s, 2);
    }
    Index d = dom.dim();
    int k = (int)dom.size();
    auto z = [&](Index x, int i, int j) {
        int pos = dom.position(IsingInstance::site(i, j));
        return ((x >> (k - 1 - pos)) & 1) ? -1.0 : 1.0;
    };
    Matrix h = Matrix::Zero(d, d);
    for (Index x = 0; x < d; x++) {
        double e = 0;
        for (int i = 1; i <= inst.n; i++) {
            for (int j = 1; j <= inst.n; j++) {
                e += inst.h[i - 1][j - 1] * z(x, i, j);
                if (i < inst.n) {
                    e += inst.jr[i - 1][j - 1] * z(x, i, j) * z(x, i + 1, j);
                }
                if (j < inst.n) {
                    e += inst.jc[i - 1][j - 1] * z(x, i, j) * z(x, i, j + 1);
                }
            }
        }
        h(x, x) = e;
    }
    return h;
}

SpectralData spectrum(const Matrix &h, double tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
    const auto &vals = es.eigenvalues();
    const Matrix &vecs = es.eigenvectors();
    SpectralData out;
    Index start = 0;
    for (Index k = 1; k <= vals.size(); k++) {
        if (k == vals.size() || vals(k) - vals(start) > tol) {
            Matrix v = vecs.middleCols(start, k - start);
            out.energies.push_back(vals.segment(start, k - start).mean());
            out.projectors.push_back(v * v.adjoint());
            start = k;
        }
    }
    return out;
}

double energy_bound(const SpectralData &spec, const std::vector<double> &overlaps) {
    if (overlaps.size() + 1 > spec.energies.size()) {
        throw DomainError("more overlaps than spectral gaps");
    }
    double bound = spec.energies[0];
    for (size_t i = 0; i < overlaps.size(); i++) {
        if (overlaps[i] < -tolerance() || overlaps[i] > 1 + tolerance()) {
            throw DomainError("overlap outside [0, 1]");
        }
        bound += (spec.energies[i + 1] - spec.energies[i]) * overlaps[i];
    }
    return bound;
}

ProofNode entangled_pullback(const std::vector<Program> &blocks, const std::vector<std::vector<std::string>> &block_regs,
                             const Projection &post, const Manifest &m) {
    size_t k = blocks.size();
    if (k == 0 || block_regs.size() != k) {
        throw StructuralError("one register list per block");
    }
    std::vector<Projection> psi, phi;
    std::vector<ProofNode> local;
    std::vector<std::string> primary, auxiliary;
    for (size_t b = 0; b < k; b++) {
        std::vector<std::string> names = block_regs[b];
        for (const auto &v : block_regs[b]) {
            names.push_back(copy_name(v));
            primary.push_back(v);
            auxiliary.push_back(copy_name(v));
        }
        std::vector<int> dims;
        for (const auto &v : names) {
            dims.push_back(m.var_dim(v));
        }
        Projection mes = Projection::from_matrix(names, dims, m.projector("MES", dims), "MES");
        ProofNode chain = straight_line(blocks[b], fm::proj(mes));
        phi.push_back(mes);
        psi.push_back(*chain.concl.pre->proj);
        local.push_back(chain);
    }
    ProofNode premise = local[0];
    if (k > 1) {
        auto stage = [&](size_t done) {
            std::vector<Formula> fs;
            for (size_t b = 0; b < k; b++) {
                fs.push_back(fm::proj(b < done ? phi[b] : psi[b]));
            }
            return conj_all(fs);
        };
        std::vector<ProofNode> steps;
        for (size_t j = 0; j < k; j++) {
            std::vector<Formula> others;
            for (size_t b = 0; b < k; b++) {
                if (b != j) {
                    others.push_back(fm::proj(b < j ? phi[b] : psi[b]));
                }
            }
            Formula mu = conj_all(others);
            ProofNode cst = step("Const", fm::conj(fm::proj(psi[j]), mu), fm::conj(fm::proj(phi[j]), mu), local[j]);
            steps.push_back(step("Weak", stage(j), stage(j + 1), cst));
        }
        ProofNode glued = seq_chain(steps);
        Projection psi_all = psi[0], phi_all = phi[0];
        for (size_t b = 1; b < k; b++) {
            psi_all = tensor(psi_all, psi[b]);
            phi_all = tensor(phi_all, phi[b]);
        }
        premise = step("Weak", fm::proj(psi_all), fm::proj(phi_all), glued);
    }
    Projection pre = pepr_precondition(*premise.concl.pre->proj, *premise.concl.post->proj, primary, auxiliary, post);
    ProofNode out = step("PEPR", fm::proj(pre), fm::proj(post), premise);
    out.evidence.primary = primary;
    out.evidence.auxiliary = auxiliary;
    return out;
}

VqaResult vqa_preconditions(const IsingInstance &inst, int count) {
    Manifest m = vqa_manifest(inst);
    SpectralData spec = spectrum(ising_hamiltonian(inst));
    if (count < 1 || count >= (int)spec.energies.size()) {
        throw DomainError("precondition count out of range");
    }
    std::vector<std::string> sites = inst.sites();
    std::vector<int> dims(sites.size(), 2);
    std::vector<Program> rows, cols;
    std::vector<std::vector<std::string>> row_regs, col_regs;
    for (int t = 1; t <= inst.n; t++) {
        rows.push_back(row_block(inst, t, m));
        cols.push_back(column_block(inst, t, m));
        std::vector<std::string> r, c;
        for (int u = 1; u <= inst.n; u++) {
            r.push_back(IsingInstance::site(t, u));
            c.push_back(IsingInstance::site(u, t));
        }
        row_regs.push_back(r);
        col_regs.push_back(c);
    }
    RegSet dom = RegSet::of(sites, dims);
    Program whole = build_vqa(inst);
    VqaResult out;
    Matrix q = Matrix::Identity(dom.dim(), dom.dim());
    for (int k = 0; k < count; k++) {
        q -= spec.projectors[k];
        Projection target = Projection::from_matrix(sites, dims, q);
        ProofNode row_part = entangled_pullback(rows, row_regs, target, m);
        ProofNode col_part = entangled_pullback(cols, col_regs, *row_part.concl.pre->proj, m);
        ProofNode proof = seq_chain({col_part, row_part});
        Projection p = *proof.concl.pre->proj;
        out.overlaps.push_back(p.matrix()(0, 0).real());
        Subspace wp = dual_wp(whole, dom, dom, target.space);
        out.wp_gap = std::max(out.wp_gap, (wp.projector() - p.matrix()).norm());
        out.preconditions.push_back(p);
        out.proofs.push_back(proof);
    }
    return out;
}

// ---- semantic regressions ----

double uniform_marginal_gap(const Program &p, const RegSet &dom, const std::vector<std::string> &inputs,
                            const std::vector<std::string> &keep, int trials, uint64_t seed) {
    Rng rng(seed);
    RegSet in, out, rest;
    for (const auto &v : inputs) {
        in.insert(v, dom.dim_of(v));
    }
    for (const auto &v : keep) {
        out.insert(v, dom.dim_of(v));
    }
    rest = dom.minus(in);
    Vector zero = Vector::Zero(rest.dim());
    zero(0) = 1;
    Matrix mixed = Matrix::Identity(out.dim(), out.dim()) / (double)out.dim();
    double gap = 0;
    for (int t = 0; t < trials; t++) {
        Vector psi = haar_vector(in.dim(), rng);
        std::vector<std::string> order = in.names();
        std::vector<std::string> tail = rest.names();
        order.insert(order.end(), tail.begin(), tail.end());
        std::vector<int> dims;
        for (const auto &v : order) {
            dims.push_back(dom.dim_of(v));
        }
        Vector full = kron(psi, zero);
        QState rho = QState::from_ordered(order, dims, full * full.adjoint());
        QState sigma = denote(p, rho).restrict(out);
        gap = std::max(gap, (sigma.matrix() - mixed).norm());
    }
    return gap;
}

double vqa_energy(const IsingInstance &inst) {
    RegSet dom;
    for (const auto &s : inst.sites()) {
        dom.insert(s, 2);
    }
    Vector zero = Vector::Zero(dom.dim());
    zero(0) = 1;
    QState sigma = denote(build_vqa(inst), QState::pure(dom, zero));
    return (ising_hamiltonian(inst) * sigma.matrix()).trace().real();
}

// ---- entangled Bell example ----

Manifest bell_phase_manifest() {
    Manifest m;
    for (const auto &v : {"q1", "q2", "q1'", "q2'"}) {
        m.declare(v, 2);
    }
    return m;
}

ProofNode bell_phase_proof() {
    Manifest m = bell_phase_manifest();
    Projection post = Projection::from_matrix({"q1", "q2"}, {2, 2}, m.projector("Phi-", {2, 2}), "Phi-");
    return entangled_pullback({gate(m, "sqrtZ", {"q1"}), gate(m, "sqrtZ", {"q2"})}, {{"q1"}, {"q2"}}, post, m);
}

}  // namespace qsl::cases
