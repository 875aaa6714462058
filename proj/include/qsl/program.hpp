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

#include <memory>
#include <string>
#include <vector>

#include "qsl/manifest.hpp"
#include "qsl/state.hpp"

namespace qsl {

enum class ProgKind { Skip, Seq, Init, Apply, If, While };

struct ProgramNode;
using Program = std::shared_ptr<const ProgramNode>;

struct ProgramNode {
    ProgKind kind = ProgKind::Skip;
    /// Seq: two children. If: one per outcome. While: the body.
    std::vector<Program> children;
    /// Init: one variable. Apply / If / While: the ordered register.
    std::vector<std::string> targets;
    std::vector<int> dims;
    Gate gate;
    Measurement meas;
};

namespace prog {
Program skip();
Program seq(Program a, Program b);
/// Right-nested sequence of a non-empty list; a single element is returned as is.
Program seq(const std::vector<Program> &items);
Program init(const std::string &var, int dim);
Program apply(const Gate &gate, const std::vector<std::string> &targets);
Program if_measure(const Measurement &m, const std::vector<std::string> &targets, std::vector<Program> branches);
/// Loop guard: outcome 1 continues, outcome 0 exits.
Program while_measure(const Measurement &m, const std::vector<std::string> &targets, Program body);
}  // namespace prog

/// Variables mentioned by the program.
RegSet vars(const Program &p);

/// Leaves of the Seq tree, left to right.
std::vector<Program> flatten(const Program &p);

/// Structural equality up to associativity of sequencing. Gates and
/// measurements compare by name, register and matrix.
bool equal(const Program &a, const Program &b);

std::string to_string(const Program &p);

/// Parses the program grammar. Variable dimensions come from the manifest.
/// `for i = a .. b do P od` is unrolled; identifiers whose '_'-separated
/// components equal the loop variable get the loop value substituted.
Program parse_program(const std::string &text, const Manifest &manifest);

struct LoopConfig {
    int max_iters = 512;
    double tail_tol = 1e-12;
};

struct Diagnostics {
    /// Trace left in the loop tail when the series was cut off.
    double loop_residual = 0;
    bool loop_truncated = false;
};

/// Denotational semantics. The program's variables must lie in the state domain.
QState denote(const Program &p, const QState &rho, const LoopConfig &cfg = {}, Diagnostics *diag = nullptr);

/// Heisenberg picture of a loop-free program: sum of K^dagger A K over the
/// Kraus terms, for an operator A on `dom`.
Matrix dual_apply(const Program &p, const RegSet &dom, const Matrix &a);

/// Weakest precondition of a loop-free program as the eigenvalue-one
/// subspace of dual_apply(p, dom, projector(post)), where post is on a subset
/// of dom and gets extended by the identity.
Subspace dual_wp(const Program &p, const RegSet &dom, const RegSet &post_dom, const Subspace &post);

bool loop_free(const Program &p);

}  // namespace qsl
