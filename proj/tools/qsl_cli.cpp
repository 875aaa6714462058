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

// qsl: simulate programs, check assertions and proofs, fuzz the checker and
// run the case-study regressions.
//
// Exit codes: 0 success, 1 verdict failure, 2 parse error, 3 semantic error.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsl/qsl.hpp"

using json = nlohmann::json;
using namespace qsl;

namespace {

struct Options {
    std::vector<std::string> manifests;
    std::string dims;
    double tol = 1e-9;
    uint64_t seed = 1;
    int trials = 200;
    int jobs = 1;
    std::string report;
    std::string keep;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, sep)) {
        size_t a = item.find_first_not_of(" \t");
        size_t b = item.find_last_not_of(" \t");
        if (a != std::string::npos) {
            out.push_back(item.substr(a, b - a + 1));
        }
    }
    return out;
}

Manifest load_manifest(const Options &o) {
    Manifest m;
    for (const auto &p : o.manifests) {
        m.merge(Manifest::from_file(p));
    }
    for (const auto &item : split(o.dims, ',')) {
        auto kv = split(item, '=');
        if (kv.size() != 2) {
            throw ParseError("expected NAME=DIM in --dims, got '" + item + "'", 1, 1);
        }
        m.declare(kv[0], std::stoi(kv[1]));
    }
    return m;
}

std::string cell(cplx z) {
    auto clean = [](double x) { return std::abs(x) < 1e-12 ? 0.0 : x; };
    char buf[64];
    double re = clean(z.real()), im = clean(z.imag());
    if (im == 0) {
        std::snprintf(buf, sizeof buf, "%.6g", re);
    } else {
        std::snprintf(buf, sizeof buf, "%.6g%+.6gi", re, im);
    }
    return buf;
}

void print_state(const QState &s, std::ostream &out) {
    out << "state on " << s.domain().str() << "\n";
    for (Index i = 0; i < s.matrix().rows(); i++) {
        out << " ";
        for (Index j = 0; j < s.matrix().cols(); j++) {
            out << " " << cell(s.matrix()(i, j));
        }
        out << "\n";
    }
}

json state_json(const QState &s) {
    json rows = json::array();
    for (Index i = 0; i < s.matrix().rows(); i++) {
        json row = json::array();
        for (Index j = 0; j < s.matrix().cols(); j++) {
            row.push_back({s.matrix()(i, j).real(), s.matrix()(i, j).imag()});
        }
        rows.push_back(row);
    }
    return {{"registers", s.domain().names()}, {"matrix", rows}};
}

// Input spec: groups separated by ';', each "r1,r2=LABEL" with LABEL a basis
// index, "mixed", or any rank-one-or-more projector name (its normalized
// projector is used). Registers not mentioned start in |0>.
QState build_input(const std::string &spec, const RegSet &needed, const Manifest &m) {
    std::vector<std::string> order;
    std::vector<int> dims;
    Matrix rho = Matrix::Identity(1, 1);
    RegSet seen;
    for (const auto &group : split(spec, ';')) {
        auto kv = split(group, '=');
        if (kv.size() != 2) {
            throw ParseError("expected REGS=LABEL in input, got '" + group + "'", 1, 1);
        }
        auto regs = split(kv[0], ',');
        std::vector<int> ds;
        for (const auto &r : regs) {
            ds.push_back(m.var_dim(r));
            seen.insert(r, ds.back());
            order.push_back(r);
            dims.push_back(ds.back());
        }
        Index d = total_dim(ds);
        const std::string &label = kv[1];
        Matrix local;
        if (label == "mixed") {
            local = Matrix::Identity(d, d) / (double)d;
        } else if (!label.empty() && std::all_of(label.begin(), label.end(), ::isdigit)) {
            Index k = std::stol(label);
            if (k >= d) {
                throw DomainError("basis index " + label + " out of range");
            }
            local = Matrix::Zero(d, d);
            local(k, k) = 1;
        } else {
            std::string name = label == "+" ? "plus" : label == "-" ? "minus" : label;
            Matrix p = m.projector(name, ds);
            local = p / p.trace().real();
        }
        rho = kron(rho, local);
    }
    for (const auto &[v, d] : needed.minus(seen)) {
        order.push_back(v);
        dims.push_back(d);
        Matrix z = Matrix::Zero(d, d);
        z(0, 0) = 1;
        rho = kron(rho, z);
    }
    return QState::from_ordered(order, dims, rho);
}

QState load_state(const std::string &path) {
    json j = json::parse(read_file(path));
    std::vector<std::string> names;
    std::vector<int> dims;
    for (const auto &r : j.at("registers")) {
        names.push_back(r.at(0).get<std::string>());
        dims.push_back(r.at(1).get<int>());
    }
    Index d = total_dim(dims);
    auto entry = [](const json &e) {
        return e.is_number() ? cplx(e.get<double>(), 0) : cplx(e.at(0).get<double>(), e.at(1).get<double>());
    };
    Matrix rho(d, d);
    if (j.contains("vector")) {
        Vector v(d);
        for (Index i = 0; i < d; i++) {
            v(i) = entry(j["vector"].at(i));
        }
        rho = v * v.adjoint();
    } else {
        for (Index i = 0; i < d; i++) {
            for (Index k = 0; k < d; k++) {
                rho(i, k) = entry(j.at("matrix").at(i).at(k));
            }
        }
    }
    QState s = QState::from_ordered(names, dims, rho);
    if (!s.is_valid(1e-8)) {
        throw DomainError("state in " + path + " is not a partial density operator");
    }
    return s;
}

QState keep_only(const QState &s, const std::string &keep) {
    if (keep.empty()) {
        return s;
    }
    RegSet k;
    for (const auto &v : split(keep, ',')) {
        if (!s.domain().contains(v)) {
            throw DomainError("register " + v + " is not in the state");
        }
        k.insert(v, s.domain().dim_of(v));
    }
    return s.restrict(k);
}

// ---- subcommands ----

int cmd_run(const Options &o, const std::string &file, const std::string &input, json &rep) {
    Manifest m = load_manifest(o);
    Program p = parse_program(read_file(file), m);
    QState rho = build_input(input, vars(p), m);
    Diagnostics diag;
    QState out = denote(p, rho, LoopConfig{}, &diag);
    QState shown = keep_only(out, o.keep);
    std::cout << "trace " << cell(out.trace()) << "\n";
    print_state(shown, std::cout);
    if (diag.loop_truncated) {
        std::cout << "warning: loop unrolling stopped with residual trace " << diag.loop_residual << "\n";
    }
    rep["trace"] = out.trace();
    rep["state"] = state_json(shown);
    rep["loop_residual"] = diag.loop_residual;
    return 0;
}

int cmd_check(const Options &o, const std::string &formula_arg, bool inline_formula, const std::string &state_file,
              const std::string &program_file, const std::string &input, json &rep) {
    Manifest m = load_manifest(o);
    Formula f = parse_formula(inline_formula ? formula_arg : read_file(formula_arg), m);
    QState rho;
    if (!state_file.empty()) {
        rho = load_state(state_file);
    } else if (!program_file.empty()) {
        Program p = parse_program(read_file(program_file), m);
        rho = denote(p, build_input(input, vars(p).unite(free_vars(f)), m));
    } else {
        rho = build_input(input, free_vars(f), m);
    }
    rho = keep_only(rho, o.keep);
    SatResult r = check_satisfaction(rho, f);
    std::cout << (r.holds ? "holds" : "fails") << "\n";
    if (!r.holds) {
        std::cout << "violated: " << r.culprit << "\n";
        std::cout << "residual: " << r.residual << "\n";
    }
    rep["holds"] = r.holds;
    rep["culprit"] = r.culprit;
    rep["residual"] = r.residual;
    return r.holds ? 0 : 1;
}

int cmd_prove(const Options &o, const std::string &file, json &rep) {
    Manifest m = load_manifest(o);
    ProofNode root = parse_proof(read_file(file), m);
    ProofReport r = check_proof(root);
    json nodes = json::array();
    for (const auto &n : r.nodes) {
        std::printf("%-24s %-7s %s%s%s\n", n.path.c_str(), n.rule.c_str(), status_name(n.status),
                    n.first_failure().empty() ? "" : "  ", n.first_failure().c_str());
        nodes.push_back({{"path", n.path}, {"rule", n.rule}, {"status", status_name(n.status)},
                         {"failure", n.first_failure()}});
    }
    std::cout << "conclusion " << to_string(root.concl) << "\n";
    std::cout << "overall " << status_name(r.overall);
    if (r.assumed) {
        std::cout << " (" << r.assumed << " imported judgment" << (r.assumed > 1 ? "s" : "") << ")";
    }
    std::cout << "\n";
    rep["nodes"] = nodes;
    rep["overall"] = status_name(r.overall);
    return r.passed() ? 0 : 1;
}

struct FuzzOutcome {
    bool ok = true;
    std::string program;
    std::string detail;
};

FuzzOutcome fuzz_one(uint64_t seed, int samples) {
    Rng rng(seed);
    int nq = 1 + (int)(seed % 3);
    std::vector<std::string> qubits;
    for (int i = 0; i < nq; i++) {
        qubits.push_back("x" + std::to_string(i));
    }
    Manifest m;
    Program p = random_program(qubits, 3, seed, m);
    RegSet dom = RegSet::of(qubits, std::vector<int>(nq, 2));
    Projection post = random_projection(dom, rng);
    Projection pre = Projection::from_listed(dom.names(), dom.dims(), dual_wp(p, dom, dom, post.space));
    Validation v = validate_triple(fm::proj(pre), p, fm::proj(post), dom, samples, seed);
    FuzzOutcome out;
    out.ok = v.ok;
    out.program = to_string(p);
    if (!v.ok && v.counterexample) {
        out.detail = "sample " + std::to_string(v.counterexample->index) + " fails " + v.counterexample->why.culprit;
    }
    return out;
}

int cmd_fuzz(const Options &o, int samples, json &rep) {
    std::vector<FuzzOutcome> results(std::max(0, o.trials));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int t = next++; t < o.trials; t = next++) {
            results[t] = fuzz_one(o.seed + (uint64_t)t, samples);
        }
    };
    std::vector<std::thread> pool;
    for (int k = 1; k < std::max(1, o.jobs); k++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    int bad = 0;
    json fails = json::array();
    for (int t = 0; t < o.trials; t++) {
        if (!results[t].ok) {
            bad++;
            std::cout << "trial " << t << ": counterexample for " << results[t].program << ": " << results[t].detail << "\n";
            fails.push_back({{"trial", t}, {"program", results[t].program}, {"detail", results[t].detail}});
        }
    }
    std::cout << "fuzz: " << o.trials << " trials, " << bad << " counterexamples (seed " << o.seed << ")\n";
    rep["trials"] = o.trials;
    rep["counterexamples"] = fails;
    return bad == 0 ? 0 : 1;
}

bool report_proof(const std::string &name, const ProofNode &root, json &rep) {
    ProofReport r = check_proof(root);
    std::cout << "  proof " << name << ": " << status_name(r.overall) << ", " << count_nodes(root) << " nodes";
    if (r.assumed) {
        std::cout << ", " << r.assumed << " imported";
    }
    std::cout << "\n";
    rep["proofs"][name] = status_name(r.overall);
    return r.passed();
}

int case_qotp(const Options &o, json &rep) {
    bool ok = true;
    for (int n = 1; n <= 3; n++) {
        Program p = cases::build_qotp(n);
        std::vector<std::string> data;
        for (int i = 1; i <= n; i++) {
            data.push_back(cases::qotp_registers(n, i).q);
        }
        RegSet dom = vars(p);
        Formula post = fm::U(RegSet::of(data, std::vector<int>(n, 2)));
        Validation v = validate_triple(fm::top(), p, post, dom, 100, o.seed);
        double gap = cases::uniform_marginal_gap(p, dom, data, data, 50, o.seed);
        std::cout << "qotp(" << n << "): expected {top} QOTP {" << to_string(post) << "}; sampled "
                  << (v.ok ? "no counterexample" : "COUNTEREXAMPLE") << " in " << v.samples
                  << " samples; marginal gap " << gap << "\n";
        ok &= v.ok && gap <= 1e-9;
        ok &= report_proof("qotp" + std::to_string(n), cases::qotp_proof(n), rep);
        rep["qotp"][std::to_string(n)] = {{"validated", v.ok}, {"marginal_gap", gap}};
    }
    ok &= report_proof("qotp1-keygen", cases::qotp1_proof(), rep);
    return ok ? 0 : 1;
}

int case_qss(const Options &o, json &rep) {
    bool ok = true;
    Manifest m = cases::qss_manifest(1);
    Program enc = cases::build_qss(1);
    for (const std::string w : {"p", "q", "r"}) {
        double gap = cases::uniform_marginal_gap(enc, vars(enc), {"p"}, {w}, 50, o.seed);
        std::cout << "qss: marginal of " << w << " vs I/3 over 50 inputs: gap " << gap << "\n";
        ok &= gap <= 1e-9;
        rep["marginal_gap"][w] = gap;
    }
    Entailment e = entails_global(parse_formula("proj PS on [p, q, r]", m), parse_formula("U[p] /\\ U[q] /\\ U[r]", m));
    std::cout << "qss: P_S entails uniform shares: " << verdict_name(e.verdict) << " (" << e.reason << ")\n";
    ok &= e.verdict == Verdict::Proved;
    for (int n = 1; n <= 3; n++) {
        ok &= report_proof("qss" + std::to_string(n), cases::qss_proof(n), rep);
    }
    return ok ? 0 : 1;
}

int case_qss_e(const Options &o, json &rep) {
    bool ok = true;
    for (int n = 1; n <= 2; n++) {
        Program p = cases::build_qss_e(n);
        std::vector<std::string> hs;
        for (int i = 1; i <= n; i++) {
            hs.push_back("h" + std::to_string(i));
        }
        double gap = cases::uniform_marginal_gap(p, vars(p), {"p"}, hs, 50, o.seed);
        std::cout << "qss_e(" << n << "): eavesdropper marginal vs I/" << (int)std::pow(3, n) << ": gap " << gap << "\n";
        ok &= gap <= 1e-9;
        rep["marginal_gap"][std::to_string(n)] = gap;
        ok &= report_proof("qss_e" + std::to_string(n), cases::qss_e_proof(n), rep);
    }
    return ok ? 0 : 1;
}

int case_vqa(const Options &o, json &rep) {
    (void)o;
    bool ok = true;
    auto inst = cases::IsingInstance::reference(0, 0, 0);
    auto spec = cases::spectrum(cases::ising_hamiltonian(inst));
    std::cout << "vqa: eigenvalues";
    for (double e : spec.energies) {
        std::cout << " " << cell(e);
    }
    std::cout << " (expected -6 -4 -2 0 2 4)\n";
    rep["eigenvalues"] = spec.energies;
    double worst0 = 1, worst1 = 1, max_err = 0, gap = 0;
    std::printf("  %-6s %-12s %-12s %-12s %-12s\n", "alpha", "<0|P0|0>", "closed form", "<0|P1|0>", "closed form");
    for (int k = 0; k <= 20; k++) {
        double a = k / 20.0;
        inst.alpha = a;
        inst.beta = 0.3;
        inst.gamma = 0.7;
        auto r = cases::vqa_preconditions(inst, 2);
        double s = std::sin(a * M_PI);
        double f0 = 1 - std::pow(s, 4) / 16;
        double f1 = 1 - (7 + std::cos(2 * a * M_PI)) * s * s / 32;
        std::printf("  %-6.2f %-12.9f %-12.9f %-12.9f %-12.9f\n", a, r.overlaps[0], f0, r.overlaps[1], f1);
        max_err = std::max({max_err, std::abs(r.overlaps[0] - f0), std::abs(r.overlaps[1] - f1)});
        worst0 = std::min(worst0, r.overlaps[0]);
        worst1 = std::min(worst1, r.overlaps[1]);
        gap = std::max(gap, r.wp_gap);
        for (const auto &p : r.proofs) {
            ok &= check_proof(p).passed();
        }
    }
    double bound = cases::energy_bound(spec, {worst0, worst1});
    std::cout << "  largest deviation from closed forms " << max_err << "; largest gap to direct precondition " << gap
              << "\n";
    std::cout << "  minima " << worst0 << " (>= 15/16) and " << worst1 << " (>= 13/16)\n";
    std::cout << "vqa: energy bound " << bound << " (expected -2.5) against ground energy " << spec.energies[0] << "\n";
    ok &= max_err <= 1e-8 && gap <= 1e-8 && bound >= -2.5 - 1e-8;
    rep["bound"] = bound;
    rep["max_closed_form_error"] = max_err;
    return ok ? 0 : 1;
}

int cmd_case(const Options &o, const std::string &name, json &rep) {
    if (name == "qotp") {
        return case_qotp(o, rep);
    }
    if (name == "qss") {
        return case_qss(o, rep);
    }
    if (name == "qss_e") {
        return case_qss_e(o, rep);
    }
    if (name == "vqa") {
        return case_vqa(o, rep);
    }
    throw ParseError("unknown case '" + name + "' (expected qotp, qss, qss_e or vqa)", 1, 1);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum separation logic toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--manifest", o.manifests, "Gate/measurement manifest (JSON); repeatable");
    app.add_option("--dims", o.dims, "Register dimensions, e.g. p=3,q=3");
    app.add_option("--tol", o.tol, "Numerical tolerance");
    app.add_option("--seed", o.seed, "Random seed");
    app.add_option("--trials", o.trials, "Fuzzing trials");
    app.add_option("--jobs", o.jobs, "Worker threads");
    app.add_option("--report", o.report, "Write a JSON report");
    app.add_option("--keep", o.keep, "Show only these registers, e.g. q1,q2");

    std::string file, input, state_file, program_file, case_name;
    bool inline_formula = false;
    int samples = 20;

    auto *run = app.add_subcommand("run", "Run a program on an input state");
    run->add_option("program", file, "Program file")->required();
    run->add_option("--input", input, "Input, e.g. \"q=+; a,b=Phi+\"");

    auto *check = app.add_subcommand("check", "Check a state against an assertion");
    check->add_option("formula", file, "Formula file (or text with -e)")->required();
    check->add_flag("-e,--expr", inline_formula, "Treat the formula argument as text");
    check->add_option("--state", state_file, "State file (JSON)");
    check->add_option("--program", program_file, "Program to run on --input first");
    check->add_option("--input", input, "Input state spec");

    auto *prove = app.add_subcommand("prove", "Check a proof script");
    prove->add_option("proof", file, "Proof script")->required();

    auto *fuzz = app.add_subcommand("fuzz", "Fuzz the weakest-precondition triples against the semantics");
    fuzz->add_option("--samples", samples, "Samples per trial");

    auto *cs = app.add_subcommand("case", "Run a case-study regression");
    cs->add_option("name", case_name, "qotp, qss, qss_e or vqa")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    json rep;
    rep["command"] = app.get_subcommands().front()->get_name();
    int code = 0;
    try {
        set_tolerance(o.tol);
        if (*run) {
            code = cmd_run(o, file, input, rep);
        } else if (*check) {
            code = cmd_check(o, file, inline_formula, state_file, program_file, input, rep);
        } else if (*prove) {
            code = cmd_prove(o, file, rep);
        } else if (*fuzz) {
            code = cmd_fuzz(o, samples, rep);
        } else if (*cs) {
            code = cmd_case(o, case_name, rep);
        }
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        code = 2;
        rep["error"] = e.what();
    } catch (const json::exception &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        code = 2;
        rep["error"] = e.what();
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        code = 3;
        rep["error"] = e.what();
    }
    rep["exit"] = code;
    rep["ok"] = code == 0;
    if (!o.report.empty()) {
        std::ofstream out(o.report);
        out << rep.dump(2) << "\n";
    }
    return code;
}
