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

#include "support.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qsl::testing {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void note(SuiteResult &r, const std::string &what) {
    if (r.counterexamples++ == 0) {
        r.first = what;
    }
}

std::vector<int> digits(Index i, const std::vector<int> &dims) {
    std::vector<int> d(dims.size());
    for (int k = (int)dims.size() - 1; k >= 0; k--) {
        d[k] = (int)(i % dims[k]);
        i /= dims[k];
    }
    return d;
}

Matrix random_matrix(Index rows, Index cols, Rng &rng) {
    std::normal_distribution<double> g;
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; r++) {
        for (Index c = 0; c < cols; c++) {
            m(r, c) = cplx(g(rng), g(rng));
        }
    }
    return m;
}

int uniform_int(Rng &rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform01(Rng &rng) {
    return std::uniform_real_distribution<double>(0, 1)(rng);
}

}  // namespace

Matrix naive_kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); i++) {
        for (Index j = 0; j < a.cols(); j++) {
            for (Index k = 0; k < b.rows(); k++) {
                for (Index l = 0; l < b.cols(); l++) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

Matrix naive_partial_trace(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &keep) {
    std::vector<int> kd;
    for (int k : keep) {
        kd.push_back(dims[k]);
    }
    Index d = total_dim(dims), dk = total_dim(kd);
    Matrix out = Matrix::Zero(dk, dk);
    std::vector<bool> kept(dims.size(), false);
    for (int k : keep) {
        kept[k] = true;
    }
    for (Index i = 0; i < d; i++) {
        auto di = digits(i, dims);
        for (Index j = 0; j < d; j++) {
            auto dj = digits(j, dims);
            bool diag = true;
            for (size_t k = 0; k < dims.size(); k++) {
                if (!kept[k] && di[k] != dj[k]) {
                    diag = false;
                }
            }
            if (!diag) {
                continue;
            }
            Index ri = 0, rj = 0;
            for (int k : keep) {
                ri = ri * dims[k] + di[k];
                rj = rj * dims[k] + dj[k];
            }
            out(ri, rj) += m(i, j);
        }
    }
    return out;
}

double min_eigenvalue(const Matrix &h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool projector_contains(const Matrix &big, const Matrix &small, double tol) {
    return (big * small - small).norm() <= tol;
}

Projection zero_tensor(const std::string &q, int dq, const Projection &t) {
    std::vector<std::string> names{q};
    std::vector<int> dims{dq};
    for (const auto &[v, d] : t.dom) {
        names.push_back(v);
        dims.push_back(d);
    }
    Matrix zero = Matrix::Zero(dq, dq);
    zero(0, 0) = 1;
    return Projection::from_matrix(names, dims, naive_kron(zero, t.matrix()));
}

Matrix null_space(const Matrix &a, double tol) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const auto &s = svd.singularValues();
    Index rank = 0;
    for (Index k = 0; k < s.size(); k++) {
        if (s(k) > tol) {
            rank++;
        }
    }
    return svd.matrixV().rightCols(a.cols() - rank);
}

Projection named(const std::string &name, const std::vector<std::string> &regs, const std::vector<int> &dims) {
    Manifest m;
    return Projection::from_matrix(regs, dims, m.projector(name, dims), name);
}

Matrix ket_projector(const Vector &v) {
    return v * v.adjoint();
}

Vector ket(std::initializer_list<cplx> entries) {
    Vector v(entries.size());
    Index k = 0;
    for (cplx e : entries) {
        v(k++) = e;
    }
    return v;
}

RegSet default_pool() {
    return RegSet::of({"x", "y", "z", "w"}, {2, 2, 2, 3});
}

RegSet random_subset(const RegSet &pool, Rng &rng, size_t max_size) {
    auto names = pool.names();
    std::shuffle(names.begin(), names.end(), rng);
    size_t n = (size_t)uniform_int(rng, 1, (int)std::min(max_size, names.size()));
    RegSet out;
    for (size_t k = 0; k < n; k++) {
        out.insert(names[k], pool.dim_of(names[k]));
    }
    return out;
}

Projection projection_of_rank(const RegSet &dom, Index rank, Rng &rng) {
    rank = std::clamp<Index>(rank, 0, dom.dim());
    return Projection::from_listed(dom.names(), dom.dims(), random_subspace(dom.dim(), rank, rng));
}

Formula random_formula(const RegSet &pool, Rng &rng, int depth, Fragment frag) {
    if (depth > 0 && uniform01(rng) < 0.6) {
        int pick = frag == Fragment::Sp ? 2 : uniform_int(rng, 0, frag == Fragment::Any ? 3 : 2);
        if (pick == 2) {
            if (pool.size() < 2) {
                return random_formula(pool, rng, 0, frag);
            }
            auto names = pool.names();
            std::shuffle(names.begin(), names.end(), rng);
            size_t cut = (size_t)uniform_int(rng, 1, (int)names.size() - 1);
            RegSet a, b;
            for (size_t k = 0; k < names.size(); k++) {
                (k < cut ? a : b).insert(names[k], pool.dim_of(names[k]));
            }
            return fm::star(random_formula(a, rng, depth - 1, frag), random_formula(b, rng, depth - 1, frag));
        }
        Formula l = random_formula(pool, rng, depth - 1, frag);
        Formula r = random_formula(pool, rng, depth - 1, frag);
        if (pick == 0) {
            return fm::conj(l, r);
        }
        if (pick == 1) {
            return fm::disj(l, r);
        }
        return fm::imp(l, r);
    }
    double u = uniform01(rng);
    RegSet s = random_subset(pool, rng, 2);
    if (u < 0.06) {
        return fm::top();
    }
    if (u < 0.09) {
        return fm::bot();
    }
    if (frag == Fragment::Sp) {
        if (u < 0.5) {
            return fm::U(s);
        }
        return fm::proj(projection_of_rank(s, 1, rng));
    }
    if (u < 0.25) {
        return fm::D(s);
    }
    if (u < 0.5) {
        return fm::U(s);
    }
    return fm::proj(projection_of_rank(s, uniform_int(rng, 1, (int)s.dim()), rng));
}

// ---- assertion properties ----

SuiteResult restriction_suite(int trials, uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r{"restriction"};
    Rng rng(seed);
    RegSet pool = default_pool();
    for (int attempt = 0; r.trials < trials && attempt < trials * 50; attempt++) {
        Formula f = random_formula(pool, rng, 2, Fragment::Res);
        RegSet v = free_vars(f).unite(random_subset(pool, rng, 2));
        std::vector<QState> states = sample_satisfying(f, v, 1, seed + attempt).states;
        QState probe = random_state(v, rng);
        if (satisfies(probe, f)) {
            states.push_back(probe);
        }
        if (states.empty()) {
            continue;
        }
        r.trials++;
        for (const auto &rho : states) {
            if (!satisfies(rho.restrict(free_vars(f)), f)) {
                note(r, "restriction of a model fails " + to_string(f));
            }
            RegSet bigger = v;
            bigger.insert("e", 2);
            if (!satisfies(random_extension(rho, bigger, rng), f)) {
                note(r, "extension of a model fails " + to_string(f));
            }
        }
    }
    r.seconds = since(t0);
    return r;
}

SuiteResult cm_suite(int trials, uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r{"mixture closure"};
    Rng rng(seed);
    RegSet pool = default_pool();
    for (int attempt = 0; r.trials < trials && attempt < trials * 50; attempt++) {
        Formula f = random_formula(pool, rng, 2, Fragment::Any);
        if (!in_cm(f)) {
            continue;
        }
        RegSet v = free_vars(f).unite(random_subset(pool, rng, 1));
        auto s = sample_satisfying(f, v, 2, seed + attempt).states;
        if (s.size() < 2) {
            continue;
        }
        r.trials++;
        double lambda = uniform01(rng);
        QState mix(v, lambda * s[0].matrix() + (1 - lambda) * s[1].matrix());
        if (!satisfies(mix, f)) {
            note(r, "mixture leaves " + to_string(f));
        }
    }
    r.seconds = since(t0);
    return r;
}

SuiteResult sp_suite(int trials, uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r{"least element"};
    Rng rng(seed);
    RegSet pool = default_pool();
    for (int attempt = 0; r.trials < trials && attempt < trials * 50; attempt++) {
        Formula f = random_formula(pool, rng, 2, Fragment::Sp);
        if (!in_sp(f)) {
            note(r, "generator left the fragment: " + to_string(f));
            continue;
        }
        auto least = sp_least(f);
        RegSet v = free_vars(f).unite(random_subset(pool, rng, 2));
        auto s = sample_satisfying(f, v, 3, seed + attempt).states;
        r.trials++;
        if (!least) {
            if (!s.empty()) {
                note(r, "no least element but a model exists for " + to_string(f));
            }
            continue;
        }
        if (!satisfies(*least, f)) {
            note(r, "least element is not a model of " + to_string(f));
        }
        for (const auto &rho : s) {
            if (!preceq(*least, rho)) {
                note(r, "model above no least element for " + to_string(f));
            }
        }
    }
    r.seconds = since(t0);
    return r;
}

// ---- modification ----

SuiteResult modification_suite(int trials, uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r{"modification"};
    Rng rng(seed);
    RegSet pool = default_pool();
    for (int attempt = 0; r.trials < trials && attempt < trials * 20; attempt++) {
        Formula f = random_formula(pool, rng, 2, Fragment::Any);
        Command cmd;
        Program p;
        if (uniform01(rng) < 0.4) {
            RegSet s = random_subset(pool, rng, 1);
            std::string q = s.names()[0];
            cmd = Command::init(q, s.dim_of(q));
            p = prog::init(q, s.dim_of(q));
        } else {
            RegSet s = random_subset(pool, rng, 2);
            Matrix u = haar_unitary(s.dim(), rng);
            auto names = s.names();
            std::shuffle(names.begin(), names.end(), rng);
            std::vector<int> dims;
            for (const auto &n : names) {
                dims.push_back(s.dim_of(n));
            }
            cmd = Command::unitary(names, dims, u);
            p = prog::apply(Gate{"G", dims, u, std::nullopt}, names);
        }
        std::optional<Formula> pre = modify(f, cmd);
        if (!pre) {
            continue;
        }
        if (free_vars(*pre) != free_vars(f)) {
            note(r, "modification changed the free variables of " + to_string(f));
        }
        RegSet v = free_vars(f).unite(cmd.reg());
        for (const auto &rho : sample_satisfying(*pre, v, 5, seed + attempt).states) {
            if (r.trials >= trials) {
                break;
            }
            r.trials++;
            if (!satisfies(denote(p, rho), f)) {
                note(r, to_string(p) + " breaks " + to_string(f));
            }
        }
    }
    r.seconds = since(t0);
    return r;
}

SuiteResult wp_fuzz_suite(int trials, uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r{"wp fuzzing"};
    Manifest m;
    for (int t = 0; t < trials; t++) {
        uint64_t s = seed + (uint64_t)t;
        Rng rng(s);
        int nq = 1 + t % 3;
        std::vector<std::string> qubits;
        for (int i = 0; i < nq; i++) {
            qubits.push_back("x" + std::to_string(i));
        }
        Program p = random_program(qubits, 3, s, m);
        if (!loop_free(p)) {
            note(r, "generator produced a loop");
            continue;
        }
        RegSet dom = RegSet::of(qubits, std::vector<int>(nq, 2));
        Projection post = random_projection(dom, rng);
        Projection pre = Projection::from_listed(dom.names(), dom.dims(), dual_wp(p, dom, dom, post.space));
        Validation v = validate_triple(fm::proj(pre), p, fm::proj(post), dom, 20, s);
        r.trials++;
        if (!v.ok) {
            note(r, "counterexample for " + to_string(p));
        }
    }
    r.seconds = since(t0);
    return r;
}

// ---- kernel ----

namespace {

std::vector<std::vector<int>> subsets(int n) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << n); mask++) {
        std::vector<int> s;
        for (int k = 0; k < n; k++) {
            if (mask & (1 << k)) {
                s.push_back(k);
            }
        }
        out.push_back(s);
    }
    return out;
}

bool is_subset(const std::vector<int> &a, const std::vector<int> &b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void check_trace_pair(SuiteResult &r, const Matrix &m, const std::vector<int> &dims, const std::vector<int> &s1,
                      const std::vector<int> &s2) {
    std::vector<int> d2, pos;
    for (int k : s2) {
        d2.push_back(dims[k]);
    }
    for (int k : s1) {
        pos.push_back((int)(std::find(s2.begin(), s2.end(), k) - s2.begin()));
    }
    Matrix two_step = partial_trace(partial_trace(m, dims, s2), d2, pos);
    Matrix one_step = partial_trace(m, dims, s1);
    Matrix oracle = naive_partial_trace(m, dims, s1);
    double scale = std::max(1.0, m.norm());
    if ((two_step - one_step).norm() > 1e-12 * scale || (one_step - oracle).norm() > 1e-12 * scale) {
        note(r, "partial trace composition fails");
    }
    if (std::abs(partial_trace(m, dims, s1).trace() - m.trace()) > 1e-12 * scale) {
        note(r, "partial trace changed the trace");
    }
}

}  // namespace

SuiteResult partial_trace_suite(int random_trials, uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r{"partial trace composition"};
    Rng rng(seed);
    for (const auto &dims : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {2, 2, 2}, {3, 2, 2}, {2, 3, 2, 2}}) {
        Index d = total_dim(dims);
        Matrix m = random_matrix(d, d, rng);
        int n = (int)dims.size();
        for (const auto &s2 : subsets(n)) {
            for (const auto &s1 : subsets(n)) {
                if (is_subset(s1, s2)) {
                    r.trials++;
                    check_trace_pair(r, m, dims, s1, s2);
                }
            }
        }
    }
    for (int t = 0; t < random_trials; t++) {
        int n = uniform_int(rng, 1, 4);
        std::vector<int> dims;
        for (int k = 0; k < n; k++) {
            dims.push_back(uniform_int(rng, 1, 3));
        }
        Index d = total_dim(dims);
        Matrix m = random_matrix(d, d, rng);
        auto all = subsets(n);
        auto s2 = all[uniform_int(rng, 0, (int)all.size() - 1)];
        std::vector<int> s1;
        for (int k : s2) {
            if (uniform01(rng) < 0.5) {
                s1.push_back(k);
            }
        }
        r.trials++;
        check_trace_pair(r, m, dims, s1, s2);
    }
    r.seconds = since(t0);
    return r;
}

SuiteResult tensor_suite(int random_trials, uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r{"tensor associativity"};
    Rng rng(seed);
    std::vector<Matrix> fixtures = {Matrix::Identity(1, 1), Matrix::Identity(2, 2), ops::pauli_x(), ops::pauli_y(),
                                    ops::pauli_z(), ops::hadamard(), ops::basis_projector(3, 1),
                                    random_matrix(2, 3, rng), random_matrix(3, 1, rng)};
    auto check = [&](const Matrix &a, const Matrix &b, const Matrix &c) {
        r.trials++;
        Matrix left = kron(kron(a, b), c);
        Matrix right = kron(a, kron(b, c));
        Matrix oracle = naive_kron(naive_kron(a, b), c);
        // entries are triple products, so the two groupings agree up to rounding
        double scale = std::max(1.0, oracle.cwiseAbs().maxCoeff());
        if (left.rows() != right.rows() || left.cols() != right.cols() ||
            (left - right).cwiseAbs().maxCoeff() > 1e-14 * scale ||
            (left - oracle).cwiseAbs().maxCoeff() > 1e-14 * scale) {
            note(r, "tensor product is not associative");
        }
    };
    for (const auto &a : fixtures) {
        for (const auto &b : fixtures) {
            for (const auto &c : fixtures) {
                check(a, b, c);
            }
        }
    }
    for (int t = 0; t < random_trials; t++) {
        auto rand = [&]() { return random_matrix(uniform_int(rng, 1, 3), uniform_int(rng, 1, 3), rng); };
        Matrix a = rand(), b = rand(), c = rand();
        check(a, b, c);
    }
    r.seconds = since(t0);
    return r;
}

namespace {

void check_ceil(SuiteResult &r, const Projection &p, const std::string &q, Rng &rng) {
    r.trials++;
    int dq = p.dom.dim_of(q);
    Projection t = ceil_zero(p, q);
    if (!p.space.contains(zero_tensor(q, dq, t).space)) {
        note(r, "|0><0| (x) ceil is not below P");
        return;
    }
    // oracle: vectors t with |0> (x) t inside P, from the null space of
    // (I - P) restricted to the |0>_q slice
    std::vector<std::string> order{q};
    for (const auto &n : t.dom.names()) {
        order.push_back(n);
    }
    Matrix pm = QState(p.dom, p.matrix()).ordered(order);
    Index rest = t.dom.dim();
    Matrix slice = (Matrix::Identity(pm.rows(), pm.cols()) - pm).leftCols(rest);
    Subspace expected = Subspace::span(null_space(slice, 1e-9));
    if (expected.rank() != t.rank() || !expected.equals(t.space)) {
        note(r, "ceil differs from the null-space oracle");
    }
    for (int k = 0; k < 3; k++) {
        Vector v = haar_vector(rest, rng);
        v -= t.matrix() * v;
        if (v.norm() < 1e-6) {
            continue;
        }
        Projection bigger = Projection::from_listed(t.dom.names(), t.dom.dims(), t.space.join(Subspace::span(v)));
        if (p.space.contains(zero_tensor(q, dq, bigger).space)) {
            note(r, "ceil is not maximal");
        }
    }
}

}  // namespace

SuiteResult ceil_suite(int random_trials, uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r{"ceil maximality"};
    Rng rng(seed);
    std::vector<Projection> fixtures;
    for (const auto &name : {"zero", "one", "plus", "minus", "I"}) {
        fixtures.push_back(zero_tensor("q", 2, named(name, {"r"}, {2})));
    }
    fixtures.push_back(zero_tensor("q", 2, Projection::from_listed({"r"}, {2}, Subspace::zero(2))));
    for (const auto &name : {"Phi+", "Phi-", "Psi+", "I"}) {
        fixtures.push_back(named(name, {"q", "r"}, {2, 2}));
        fixtures.push_back(named(name, {"r", "q"}, {2, 2}));
    }
    fixtures.push_back(Projection::from_matrix({"q", "r"}, {2, 2}, kron(ops::basis_projector(2, 1), Matrix::Identity(2, 2))));
    fixtures.push_back(named("PS", {"q", "r", "s"}, {3, 3, 3}));
    for (const auto &p : fixtures) {
        check_ceil(r, p, "q", rng);
    }
    for (int t = 0; t < random_trials; t++) {
        int dq = uniform_int(rng, 2, 3);
        RegSet dom = RegSet::of({"q", "r"}, {dq, uniform_int(rng, 2, 3)});
        if (uniform01(rng) < 0.3) {
            dom.insert("s", 2);
        }
        Projection p = projection_of_rank(dom, uniform_int(rng, 0, (int)dom.dim()), rng);
        if (uniform01(rng) < 0.6) {
            RegSet rest = dom.minus(RegSet::of({"q"}, {dq}));
            Projection inner = projection_of_rank(rest, uniform_int(rng, 1, (int)rest.dim()), rng);
            Subspace extra = random_subspace(dom.dim(), uniform_int(rng, 0, 2), rng);
            p.space = zero_tensor("q", dq, inner).space.join(extra);
        }
        check_ceil(r, p, "q", rng);
    }
    r.seconds = since(t0);
    return r;
}

SuiteResult loewner_suite(int random_trials, uint64_t seed) {
    auto t0 = Clock::now();
    SuiteResult r{"order and containment"};
    Rng rng(seed);
    auto check = [&](const Matrix &a, const Matrix &b) {
        r.trials++;
        bool order = loewner_leq(a, b, 1e-9);
        bool eig = min_eigenvalue(b - a) >= -1e-9;
        bool contain = projector_contains(b, a, 1e-7);
        bool sub = Subspace::of_projector(b).contains(Subspace::of_projector(a));
        if (order != contain || order != eig || order != sub) {
            note(r, "order and containment disagree");
        }
    };
    std::vector<Matrix> one = {Matrix::Zero(2, 2), ops::basis_projector(2, 0), ops::basis_projector(2, 1),
                               ket_projector(ket({1, 1}) / std::sqrt(2.0)), Matrix::Identity(2, 2)};
    Manifest m;
    std::vector<Matrix> two = {Matrix::Zero(4, 4), m.projector("Phi+", {2, 2}), m.projector("Psi-", {2, 2}),
                               ops::basis_projector(4, 0),
                               ops::basis_projector(4, 0) + ops::basis_projector(4, 3), Matrix::Identity(4, 4)};
    for (const auto &set : {one, two}) {
        for (const auto &a : set) {
            for (const auto &b : set) {
                check(a, b);
            }
        }
    }
    for (int t = 0; t < random_trials; t++) {
        Index d = uniform_int(rng, 2, 6);
        Subspace a = random_subspace(d, uniform_int(rng, 0, (int)d), rng);
        Subspace b = uniform01(rng) < 0.5 ? a.join(random_subspace(d, uniform_int(rng, 0, (int)d), rng))
                                          : random_subspace(d, uniform_int(rng, 0, (int)d), rng);
        check(a.projector(), b.projector());
        check(b.projector(), a.projector());
    }
    r.seconds = since(t0);
    return r;
}

std::string data_path(const std::string &rel) {
    return std::string(QSL_DATA_DIR) + "/" + rel;
}

std::string read_text(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace qsl::testing
