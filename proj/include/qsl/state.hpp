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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsl/linalg.hpp"

namespace qsl {

/// A finite set of named quantum variables with their local dimensions.
/// Iteration order (lexicographic by name) is the canonical tensor order.
class RegSet {
   public:
    RegSet() = default;
    RegSet(std::initializer_list<std::pair<const std::string, int>> init);
    static RegSet of(const std::vector<std::string> &names, const std::vector<int> &dims);

    void insert(const std::string &name, int dim);
    bool contains(const std::string &name) const;
    int dim_of(const std::string &name) const;
    size_t size() const {
        return vars_.size();
    }
    bool empty() const {
        return vars_.empty();
    }
    /// Product of local dimensions; 1 for the empty set.
    Index dim() const;
    std::vector<std::string> names() const;
    std::vector<int> dims() const;
    /// Canonical position of each name; throws if absent.
    std::vector<int> positions(const std::vector<std::string> &names) const;
    int position(const std::string &name) const;

    bool subset_of(const RegSet &other) const;
    bool disjoint(const RegSet &other) const;
    RegSet unite(const RegSet &other) const;
    RegSet intersect(const RegSet &other) const;
    RegSet minus(const RegSet &other) const;

    bool operator==(const RegSet &other) const {
        return vars_ == other.vars_;
    }
    bool operator!=(const RegSet &other) const {
        return !(*this == other);
    }
    auto begin() const {
        return vars_.begin();
    }
    auto end() const {
        return vars_.end();
    }

    std::string str() const;

   private:
    std::map<std::string, int> vars_;
};

/// A partial density operator tagged with its domain.
class QState {
   public:
    QState();
    /// rho must be given in the canonical order of dom.
    QState(RegSet dom, Matrix rho);
    /// rho given in the listed order of names; it is reordered to canonical.
    static QState from_ordered(const std::vector<std::string> &names, const std::vector<int> &dims,
                               const Matrix &rho);
    static QState pure(const RegSet &dom, const Vector &psi);
    static QState maximally_mixed(const RegSet &dom);

    const RegSet &domain() const {
        return dom_;
    }
    const Matrix &matrix() const {
        return rho_;
    }
    double trace() const;

    /// Partial trace onto domain() intersected with s.
    QState restrict(const RegSet &s) const;
    /// Matrix in the listed order of names (a permutation of the domain).
    Matrix ordered(const std::vector<std::string> &names) const;

    /// Validates a partial density operator: PSD, Hermitian, trace <= 1.
    bool is_valid(double tol) const;

   private:
    RegSet dom_;
    Matrix rho_;
};

/// a is a restriction of b.
bool preceq(const QState &a, const QState &b);

/// Tensor product on disjoint domains; nullopt otherwise.
std::optional<QState> combine(const QState &a, const QState &b);

/// Frobenius distance between states with equal domains.
double distance(const QState &a, const QState &b);

}  // namespace qsl
