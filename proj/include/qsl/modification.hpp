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

#include <optional>
#include <string>

#include "qsl/formula.hpp"
#include "qsl/program.hpp"

namespace qsl {

/// An initialization or unitary command, the two statement forms that have
/// syntactic backward modification.
struct Command {
    enum Kind { Init, Unitary } kind = Init;
    std::vector<std::string> targets;
    std::vector<int> dims;
    Matrix matrix;

    static Command init(const std::string &var, int dim);
    static Command unitary(const std::vector<std::string> &targets, const std::vector<int> &dims, const Matrix &u);
    /// From an Init or Apply program node.
    static Command of(const Program &p);
    RegSet reg() const;
};

/// Largest projection T on dom(p) minus q with |0><0|_q (x) T below p.
Projection ceil_zero(const Projection &p, const std::string &q);

/// Backward modification of a projection by a command; nullopt if undefined.
std::optional<Formula> modify_atomic(const Formula &atom, const Command &cmd);

/// Backward modification of a formula; nullopt if undefined anywhere.
std::optional<Formula> modify(const Formula &f, const Command &cmd);

/// Modification by a general operation on a register disjoint from the
/// program. Defined for projections, top, bot, and, or.
std::optional<Formula> e_modify(const Formula &f, const std::vector<std::string> &targets, const QuantumOperation &op);

/// Applies the operation to a state (identity outside its register).
QState apply_operation(const QState &rho, const std::vector<std::string> &targets, const QuantumOperation &op);

}  // namespace qsl
