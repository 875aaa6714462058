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

#include "qsl/formula.hpp"

namespace qsl {

enum class Verdict { Proved, Disproved, Unknown };

const char *verdict_name(Verdict v);

struct Entailment {
    Verdict verdict = Verdict::Unknown;
    std::string reason;
    std::optional<QState> counterexample;
};

/// Global implication: every state whose domain covers the free variables
/// of both sides and satisfies lhs also satisfies rhs. Proofs use the
/// projection, uniformity and domain axiom schemas; refutation samples lhs.
Entailment entails_global(const Formula &lhs, const Formula &rhs, uint64_t seed = 0, int samples = 64);

/// Every state in the projection has a maximally mixed restriction to s,
/// where s is a subset of the projection register. Decided on an
/// orthonormal basis of the projection.
bool projection_forces_uniform(const Projection &p, const RegSet &s);

}  // namespace qsl
