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

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qsl/manifest.hpp"
#include "qsl/state.hpp"

namespace qsl {

/// A projection (closed subspace) on a register, stored in canonical order.
/// `label` and `listed` remember how it was named: the named matrix is in
/// the order of `listed`. Computed projections carry no label.
struct Projection {
    RegSet dom;
    Subspace space;
    std::string label;
    std::vector<std::string> listed;

    static Projection from_listed(const std::vector<std::string> &names, const std::vector<int> &dims,
                                  const Subspace &space_in_listed_order, const std::string &label = "");
    static Projection from_matrix(const std::vector<std::string> &names, const std::vector<int> &dims,
                                  const Matrix &projector_in_listed_order, const std::string &label = "");
    static Projection identity(const RegSet &dom);

    Matrix matrix() const {
        return space.projector();
    }
    Index rank() const {
        return space.rank();
    }
    bool equals(const Projection &other) const;
    /// Cylindric extension P (x) I to a larger domain.
    Projection extend(const RegSet &bigger) const;
    /// Basis in the listed order (for printing).
    Matrix listed_basis() const;
};

enum class FKind { Top, Bot, D, U, Proj, And, Or, Star, Imp };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    FKind kind = FKind::Top;
    RegSet set;
    std::shared_ptr<const Projection> proj;
    Formula lhs;
    Formula rhs;
};

namespace fm {
Formula top();
Formula bot();
Formula D(const RegSet &s);
Formula U(const RegSet &s);
Formula proj(const Projection &p);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula star(Formula a, Formula b);
Formula imp(Formula a, Formula b);
}  // namespace fm

RegSet free_vars(const Formula &f);

/// Restriction-closed fragment: atoms, top, bot, and, or, star.
bool in_res(const Formula &f);
/// Mixture-closed fragment.
bool in_cm(const Formula &f);
/// Fragment with a least satisfying state.
bool in_sp(const Formula &f);
/// Least element of an SP formula; nullopt for unsatisfiable ones.
std::optional<QState> sp_least(const Formula &f);

struct SatResult {
    bool holds = true;
    /// Printed form of the first failing atom or connective.
    std::string culprit;
    double residual = 0;
};

/// Satisfaction. Requires free_vars(f) within the state domain.
SatResult check_satisfaction(const QState &rho, const Formula &f);
bool satisfies(const QState &rho, const Formula &f);

/// Structural equality; projections compare as subspaces.
bool equal(const Formula &a, const Formula &b);

/// Renames free variables. Projections keep their labels with the listed
/// names renamed.
Formula rename(const Formula &f, const std::map<std::string, std::string> &sub);

/// Named projections available to the parser beyond the manifest. The
/// subspace is in the order of the names listed at the use site.
using ProjectionTable = std::map<std::string, std::pair<std::vector<int>, Subspace>>;

/// Chooses a printed name for unlabeled projections.
using ProjectionNamer = std::function<std::string(const Projection &)>;

std::string to_string(const Formula &f, const ProjectionNamer &namer = nullptr);

/// Grammar: top | bot | D[ids] | U[ids] | proj NAME on [ids] | f /\ f | f \/ f
/// | f * f | f -> f | ( f ). Binding strength: * over /\ over \/ over ->.
Formula parse_formula(const std::string &text, const Manifest &manifest, const ProjectionTable *table = nullptr);

/// Visits every projection in the formula.
void for_each_projection(const Formula &f, const std::function<void(const Projection &)> &fn);

}  // namespace qsl
