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

#include "qsl/oracle.hpp"

#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

namespace qsl {

namespace {

// retries shared by all conjunctions in one sampling call
constexpr int kAndBudget = 1000;

Matrix gaussian_matrix(Index rows, Index cols, Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; j++) {
        for (Index i = 0; i < rows; i++) {
            m(i, j) = cplx(n(rng), n(rng));
        }
    }
    return m;
}

}  // namespace

Vector haar_vector(Index d, Rng &rng) {
    Vector v = gaussian_matrix(d, 1, rng).col(0);
    return v / v.norm();
}

Matrix haar_unitary(Index d, Rng &rng) {
    return haar_isometry(d, d, rng);
}

Matrix haar_isometry(Index d, Index k, Rng &rng) {
    Matrix g = gaussian_matrix(d, k, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(d, k);
    Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (Index k2 = 0; k2 < k; k2++) {
        cplx z = r(k2, k2);
        double a = std::abs(z);
        if (a > 0) {
            q.col(k2) *= z / a;
        }
    }
    return q;
}

std::vector<double> dirichlet(size_t k, Rng &rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(k);
    double s = 0;
    for (auto &x : w) {
        x = e(rng) + 1e-12;
        s += x;
    }
    for (auto &x : w) {
        x /= s;
    }
    return w;
}

QState random_state(const RegSet &dom, Rng &rng, int max_rank) {
    Index d = dom.dim();
    std::uniform_int_distribution<int> pick(1, (int)std::min<Index>(max_rank, d));
    int k = pick(rng);
    auto w = dirichlet(k, rng);
    Matrix rho = Matrix::Zero(d, d);
    for (int i = 0; i < k; i++) {
        Vector v = haar_vector(d, rng);
        rho += w[i] * v * v.adjoint();
    }
    return QState(dom, rho);
}

Subspace random_subspace(Index d, Index rank, Rng &rng) {
    if (rank == 0) {
        return Subspace::zero(d);
    }
    return Subspace(haar_isometry(d, rank, rng));
}

Projection random_projection(const RegSet &dom, Rng &rng) {
    Index d = dom.dim();
    std::uniform_int_distribution<Index> pick(0, d);
    Projection p;
    p.dom = dom;
    p.space = random_subspace(d, pick(rng), rng);
    p.listed = dom.names();
    return p;
}

QState random_extension(const QState &sigma, const RegSet &v, Rng &rng) {
    if (!sigma.domain().subset_of(v)) {
        throw DomainError("extension target does not contain the state domain");
    }
    RegSet rest = v.minus(sigma.domain());
    if (rest.empty()) {
        return sigma;
    }
    // sigma = A A^dagger with A = V sqrt(L) W for a random unitary W
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(sigma.matrix()));
    std::vector<Vector> cols;
    for (Index i = 0; i < es.eigenvalues().size(); i++) {
        double l = es.eigenvalues()(i);
        if (l > 1e-15) {
            cols.push_back(es.eigenvectors().col(i) * std::sqrt(l));
        }
    }
    Index r = (Index)cols.size();
    Index da = sigma.domain().dim();
    Index dr = rest.dim();
    std::vector<std::string> names = sigma.domain().names();
    std::vector<int> dims = sigma.domain().dims();
    for (const auto &[n, d] : rest) {
        names.push_back(n);
        dims.push_back(d);
    }
    if (r == 0) {
        return QState::from_ordered(names, dims, Matrix::Zero(da * dr, da * dr));
    }
    Matrix a(da, r);
    for (Index i = 0; i < r; i++) {
        a.col(i) = cols[i];
    }
    a = a * haar_unitary(r, rng);
    std::uniform_int_distribution<int> mode(0, 2);
    int m = mode(rng);
    if (r > dr) {
        m = 1;
    }
    Matrix joint = Matrix::Zero(da * dr, da * dr);
    if (m == 0 || m == 2) {
        // purification-style: sum_k |a_k>|r_k> with orthonormal r_k
        Matrix iso = haar_isometry(dr, r, rng);
        Vector psi = Vector::Zero(da * dr);
        for (Index k = 0; k < r; k++) {
            psi += kron(a.col(k), iso.col(k));
        }
        joint += (m == 2 ? 0.5 : 1.0) * psi * psi.adjoint();
    }
    if (m == 1 || m == 2) {
        Matrix cls = Matrix::Zero(da * dr, da * dr);
        for (Index k = 0; k < r; k++) {
            QState tau = random_state(rest, rng, 2);
            cls += kron(a.col(k) * a.col(k).adjoint(), tau.matrix());
        }
        joint += (m == 2 ? 0.5 : 1.0) * cls;
    }
    return QState::from_ordered(names, dims, joint);
}

namespace {

QState sample_in_projection(const Projection &p, Rng &rng) {
    Index r = p.rank();
    Index d = p.dom.dim();
    if (r == 0) {
        // only the zero state fits; use a trace-one state on an empty support instead
        return QState(p.dom, Matrix::Zero(d, d));
    }
    std::uniform_int_distribution<int> pick(1, (int)std::min<Index>(3, r));
    int k = pick(rng);
    auto w = dirichlet(k, rng);
    Matrix rho = Matrix::Zero(d, d);
    for (int i = 0; i < k; i++) {
        Vector c = haar_vector(r, rng);
        Vector v = p.space.basis() * c;
        rho += w[i] * v * v.adjoint();
    }
    return QState(p.dom, rho);
}

bool projection_like(const Formula &f) {
    switch (f->kind) {
        case FKind::Top:
        case FKind::D:
        case FKind::Proj:
            return true;
        case FKind::And:
            return projection_like(f->lhs) && projection_like(f->rhs);
        default:
            return false;
    }
}

void collect_projections(const Formula &f, std::vector<Projection> &out, RegSet &dom) {
    switch (f->kind) {
        case FKind::D:
            dom = dom.unite(f->set);
            break;
        case FKind::Proj:
            out.push_back(*f->proj);
            dom = dom.unite(f->proj->dom);
            break;
        case FKind::And:
            collect_projections(f->lhs, out, dom);
            collect_projections(f->rhs, out, dom);
            break;
        default:
            break;
    }
}

bool all_uniform(const Formula &f, RegSet &acc) {
    if (f->kind == FKind::U) {
        acc = acc.unite(f->set);
        return true;
    }
    if (f->kind == FKind::And) {
        return all_uniform(f->lhs, acc) && all_uniform(f->rhs, acc);
    }
    return false;
}

struct Sampler {
    Rng &rng;
    bool exhausted = false;
    int budget = kAndBudget;

    // A state on exactly free(f) satisfying f, or nullopt.
    std::optional<QState> local(const Formula &f) {
        RegSet fv = free_vars(f);
        switch (f->kind) {
            case FKind::Top:
                return QState();
            case FKind::Bot:
                return std::nullopt;
            case FKind::D:
                return random_state(f->set, rng);
            case FKind::U:
                return QState::maximally_mixed(f->set);
            case FKind::Proj:
                if (f->proj->rank() == 0) {
                    return std::nullopt;
                }
                return sample_in_projection(*f->proj, rng);
            case FKind::Star: {
                RegSet fa = free_vars(f->lhs);
                RegSet fb = free_vars(f->rhs);
                if (!fa.disjoint(fb)) {
                    return std::nullopt;
                }
                auto a = local(f->lhs);
                auto b = local(f->rhs);
                if (!a || !b) {
                    return std::nullopt;
                }
                return combine(*a, *b);
            }
            case FKind::Or: {
                std::bernoulli_distribution coin(0.5);
                bool left = coin(rng);
                const Formula &first = left ? f->lhs : f->rhs;
                const Formula &second = left ? f->rhs : f->lhs;
                for (const Formula *g : {&first, &second}) {
                    if (auto s = local(*g)) {
                        QState e = random_extension(*s, fv, rng);
                        if (satisfies(e, f)) {
                            return e;
                        }
                    }
                }
                return std::nullopt;
            }
            case FKind::And: {
                if (projection_like(f)) {
                    std::vector<Projection> ps;
                    RegSet dom;
                    collect_projections(f, ps, dom);
                    Projection meet = Projection::identity(dom);
                    for (const auto &p : ps) {
                        meet.space = meet.space.meet(p.extend(dom).space);
                    }
                    if (meet.rank() == 0) {
                        return std::nullopt;
                    }
                    return sample_in_projection(meet, rng);
                }
                RegSet uni;
                if (all_uniform(f, uni)) {
                    return QState::maximally_mixed(uni);
                }
                RegSet fa = free_vars(f->lhs);
                RegSet fb = free_vars(f->rhs);
                if (fa.disjoint(fb)) {
                    auto a = local(f->lhs);
                    auto b = local(f->rhs);
                    if (!a || !b) {
                        return std::nullopt;
                    }
                    return combine(*a, *b);
                }
                for (int t = 0; budget > 0; t++) {
                    budget--;
                    const Formula &g = (t % 2 == 0) ? f->lhs : f->rhs;
                    auto s = local(g);
                    if (!s) {
                        continue;
                    }
                    QState e = random_extension(*s, fv, rng);
                    if (satisfies(e, f)) {
                        return e;
                    }
                }
                exhausted = true;
                return std::nullopt;
            }
            case FKind::Imp: {
                std::bernoulli_distribution coin(0.5);
                if (coin(rng)) {
                    if (auto s = local(fm::conj(f->lhs, f->rhs))) {
                        return s;
                    }
                }
                QState s = random_state(fv, rng);
                if (satisfies(s, f)) {
                    return s;
                }
                return local(fm::conj(f->lhs, f->rhs));
            }
        }
        return std::nullopt;
    }
};

}  // namespace

SampleSet sample_satisfying(const Formula &f, const RegSet &v, int n, uint64_t seed) {
    RegSet fv = free_vars(f);
    if (!fv.subset_of(v)) {
        throw DomainError("sampling domain " + v.str() + " does not cover " + fv.str());
    }
    Rng rng(seed);
    Sampler s{rng};
    SampleSet out;
    int attempts = 0;
    while ((int)out.states.size() < n && attempts < 4 * n + 16) {
        attempts++;
        auto local = s.local(f);
        if (!local) {
            continue;
        }
        QState e = random_extension(*local, v, rng);
        if (std::abs(e.trace()) > 1e-12 && satisfies(e, f)) {
            out.states.push_back(e);
        }
    }
    out.exhausted = s.exhausted;
    return out;
}

Validation validate_triple(const Formula &pre, const Program &p, const Formula &post, const RegSet &v, int n,
                           uint64_t seed) {
    RegSet need = vars(p).unite(free_vars(pre)).unite(free_vars(post));
    if (!need.subset_of(v)) {
        throw DomainError("validation domain " + v.str() + " does not cover " + need.str());
    }
    SampleSet samples = sample_satisfying(pre, v, n, seed);
    Validation out;
    out.samples = (int)samples.states.size();
    out.sampler_exhausted = samples.exhausted;
    for (size_t i = 0; i < samples.states.size(); i++) {
        QState after = denote(p, samples.states[i]);
        SatResult r = check_satisfaction(after, post);
        if (!r.holds) {
            out.ok = false;
            out.counterexample = Counterexample{(int)i, samples.states[i], after, r};
            return out;
        }
    }
    return out;
}

Program random_program(const std::vector<std::string> &qubits, int depth, uint64_t seed, const Manifest &manifest) {
    Rng rng(seed);
    static const char *const kSingle[] = {"H", "X", "Y", "Z", "S", "T"};
    static const char *const kDouble[] = {"CNOT", "CZ", "SWAP"};
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::function<Program(int)> gen = [&](int d) -> Program {
        int choice = d == 0 ? pick(0, 2) : pick(0, 4);
        switch (choice) {
            case 0:
                return qubits.empty() ? prog::skip() : prog::init(qubits[pick(0, (int)qubits.size() - 1)], 2);
            case 1:
            case 2: {
                if (qubits.size() >= 2 && pick(0, 2) == 0) {
                    int a = pick(0, (int)qubits.size() - 1);
                    int b = pick(0, (int)qubits.size() - 2);
                    if (b >= a) {
                        b++;
                    }
                    return prog::apply(manifest.gate(kDouble[pick(0, 2)], {2, 2}), {qubits[a], qubits[b]});
                }
                int a = pick(0, (int)qubits.size() - 1);
                return prog::apply(manifest.gate(kSingle[pick(0, 5)], {2}), {qubits[a]});
            }
            case 3:
                return prog::seq(gen(d - 1), gen(d - 1));
            default: {
                int a = pick(0, (int)qubits.size() - 1);
                return prog::if_measure(manifest.measurement("M", {2}), {qubits[a]}, {gen(d - 1), gen(d - 1)});
            }
        }
    };
    if (qubits.empty() || depth == 0) {
        return prog::skip();
    }
    return gen(depth);
}

}  // namespace qsl
