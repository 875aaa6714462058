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

#include "qsl/state.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qsl {

RegSet::RegSet(std::initializer_list<std::pair<const std::string, int>> init) {
    for (const auto &[n, d] : init) {
        insert(n, d);
    }
}

RegSet RegSet::of(const std::vector<std::string> &names, const std::vector<int> &dims) {
    if (names.size() != dims.size()) {
        throw DomainError("name and dimension lists differ in length");
    }
    RegSet r;
    for (size_t k = 0; k < names.size(); k++) {
        if (r.contains(names[k])) {
            throw DomainError("repeated variable " + names[k]);
        }
        r.insert(names[k], dims[k]);
    }
    return r;
}

void RegSet::insert(const std::string &name, int dim) {
    if (dim < 1) {
        throw DomainError("variable " + name + " has non-positive dimension");
    }
    auto it = vars_.find(name);
    if (it != vars_.end() && it->second != dim) {
        throw DomainError("variable " + name + " used with dimensions " + std::to_string(it->second) + " and " +
                          std::to_string(dim));
    }
    vars_[name] = dim;
}

bool RegSet::contains(const std::string &name) const {
    return vars_.count(name) > 0;
}

int RegSet::dim_of(const std::string &name) const {
    auto it = vars_.find(name);
    if (it == vars_.end()) {
        throw DomainError("variable " + name + " not in " + str());
    }
    return it->second;
}

Index RegSet::dim() const {
    Index d = 1;
    for (const auto &[n, k] : vars_) {
        d *= k;
    }
    return d;
}

std::vector<std::string> RegSet::names() const {
    std::vector<std::string> out;
    for (const auto &[n, k] : vars_) {
        out.push_back(n);
    }
    return out;
}

std::vector<int> RegSet::dims() const {
    std::vector<int> out;
    for (const auto &[n, k] : vars_) {
        out.push_back(k);
    }
    return out;
}

int RegSet::position(const std::string &name) const {
    int k = 0;
    for (const auto &[n, d] : vars_) {
        if (n == name) {
            return k;
        }
        k++;
    }
    throw DomainError("variable " + name + " not in " + str());
}

std::vector<int> RegSet::positions(const std::vector<std::string> &names) const {
    std::vector<int> out;
    for (const auto &n : names) {
        out.push_back(position(n));
    }
    return out;
}

bool RegSet::subset_of(const RegSet &other) const {
    for (const auto &[n, d] : vars_) {
        if (!other.contains(n)) {
            return false;
        }
    }
    return true;
}

bool RegSet::disjoint(const RegSet &other) const {
    for (const auto &[n, d] : vars_) {
        if (other.contains(n)) {
            return false;
        }
    }
    return true;
}

RegSet RegSet::unite(const RegSet &other) const {
    RegSet r = *this;
    for (const auto &[n, d] : other.vars_) {
        r.insert(n, d);
    }
    return r;
}

RegSet RegSet::intersect(const RegSet &other) const {
    RegSet r;
    for (const auto &[n, d] : vars_) {
        if (other.contains(n)) {
            r.insert(n, d);
        }
    }
    return r;
}

RegSet RegSet::minus(const RegSet &other) const {
    RegSet r;
    for (const auto &[n, d] : vars_) {
        if (!other.contains(n)) {
            r.insert(n, d);
        }
    }
    return r;
}

std::string RegSet::str() const {
    std::string out = "[";
    bool first = true;
    for (const auto &[n, d] : vars_) {
        if (!first) {
            out += ", ";
        }
        out += n;
        first = false;
    }
    return out + "]";
}

QState::QState() : rho_(Matrix::Ones(1, 1)) {
}

QState::QState(RegSet dom, Matrix rho) : dom_(std::move(dom)), rho_(std::move(rho)) {
    if (rho_.rows() != dom_.dim() || rho_.cols() != dom_.dim()) {
        throw DomainError("state matrix size does not match domain " + dom_.str());
    }
}

QState QState::from_ordered(const std::vector<std::string> &names, const std::vector<int> &dims,
                            const Matrix &rho) {
    RegSet dom = RegSet::of(names, dims);
    // factor k of the canonical order is listed factor perm[k]
    std::vector<int> perm;
    for (const auto &n : dom.names()) {
        perm.push_back((int)(std::find(names.begin(), names.end(), n) - names.begin()));
    }
    return QState(dom, permute_factors(rho, dims, perm));
}

QState QState::pure(const RegSet &dom, const Vector &psi) {
    return QState(dom, psi * psi.adjoint());
}

QState QState::maximally_mixed(const RegSet &dom) {
    Index d = dom.dim();
    return QState(dom, Matrix::Identity(d, d) / (double)d);
}

double QState::trace() const {
    return rho_.trace().real();
}

QState QState::restrict(const RegSet &s) const {
    RegSet keep = dom_.intersect(s);
    if (keep == dom_) {
        return *this;
    }
    return QState(keep, partial_trace(rho_, dom_.dims(), dom_.positions(keep.names())));
}

Matrix QState::ordered(const std::vector<std::string> &names) const {
    if (names.size() != dom_.size()) {
        throw DomainError("ordering must list the whole domain");
    }
    return permute_factors(rho_, dom_.dims(), dom_.positions(names));
}

bool QState::is_valid(double tol) const {
    if (!is_hermitian(rho_, tol)) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(rho_), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol && trace() <= 1 + tol;
}

bool preceq(const QState &a, const QState &b) {
    if (!a.domain().subset_of(b.domain())) {
        return false;
    }
    return (b.restrict(a.domain()).matrix() - a.matrix()).norm() <= tolerance();
}

std::optional<QState> combine(const QState &a, const QState &b) {
    if (!a.domain().disjoint(b.domain())) {
        return std::nullopt;
    }
    std::vector<std::string> names = a.domain().names();
    std::vector<int> dims = a.domain().dims();
    for (const auto &[n, d] : b.domain()) {
        names.push_back(n);
        dims.push_back(d);
    }
    return QState::from_ordered(names, dims, kron(a.matrix(), b.matrix()));
}

double distance(const QState &a, const QState &b) {
    if (a.domain() != b.domain()) {
        throw DomainError("distance between states on different domains");
    }
    return (a.matrix() - b.matrix()).norm();
}

}  // namespace qsl
