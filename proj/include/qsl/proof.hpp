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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsl/formula.hpp"
#include "qsl/program.hpp"

namespace qsl {

struct Judgment {
    Formula pre;
    Program prog;
    Formula post;
};

std::string to_string(const Judgment &j);

/// Rule-specific side data.
struct Evidence {
    /// PEPR: the program register and its auxiliary copy, paired in order.
    std::vector<std::string> primary;
    std::vector<std::string> auxiliary;
    /// UnCR: the operation and the register it acts on.
    std::vector<std::string> op_targets;
    std::optional<QuantumOperation> op;
    /// Import: where the imported judgment comes from, and the sampling
    /// budget used to cross-check it.
    std::string source;
    int samples = 100;
    uint64_t seed = 1;
};

struct ProofNode {
    std::string rule;
    Judgment concl;
    Evidence evidence;
    std::vector<ProofNode> premises;
};

size_t count_nodes(const ProofNode &n);

enum class NodeStatus {
    Pass,
    Fail,
    /// A Weak step whose entailment could be neither proved nor refuted.
    Unproved,
    /// An imported judgment, cross-checked by sampling only.
    Assumed,
};

const char *status_name(NodeStatus s);

struct Condition {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct NodeReport {
    std::string path;
    std::string rule;
    NodeStatus status = NodeStatus::Pass;
    std::vector<Condition> conditions;

    /// First violated condition, or empty.
    std::string first_failure() const;
};

struct ProofReport {
    NodeStatus overall = NodeStatus::Pass;
    std::vector<NodeReport> nodes;
    int assumed = 0;

    bool passed() const {
        return overall == NodeStatus::Pass || overall == NodeStatus::Assumed;
    }
};

const std::vector<std::string> &rule_names();

/// Checks one inference step against its premises' conclusions.
NodeReport check_rule(const ProofNode &node, const std::string &path = "root");

/// Checks every node of the tree.
ProofReport check_proof(const ProofNode &root);

/// Precondition produced by the entangled-predicate rule:
/// the eigenvalue-one subspace of N tr_aux((Q' (x) I) Psi (Q' (x) I)), with
/// Q' the copy of post on the auxiliary register adjusted to the given
/// maximally entangled state.
Projection pepr_precondition(const Projection &psi, const Projection &mes, const std::vector<std::string> &primary,
                             const std::vector<std::string> &auxiliary, const Projection &post);

/// True when the projection is rank one and its state has maximally mixed
/// restrictions to both registers.
bool is_maximally_entangled(const Projection &p, const std::vector<std::string> &primary,
                            const std::vector<std::string> &auxiliary);

}  // namespace qsl
