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
#include <string>

#include "qsl/manifest.hpp"
#include "qsl/proof.hpp"

namespace qsl {

/// A parsed proof script together with the names it introduced.
struct ProofScript {
    Manifest manifest;
    ProjectionTable projections;
    std::map<std::string, QuantumOperation> operations;
    ProofNode root;
};

/// Script grammar (one tree per script):
///
///   script   := item* tree
///   item     := (vars (NAME DIM)*)
///             | (define-proj NAME (dims D*) (basis VEC*))
///             | (define-gate NAME (dims D*) MAT)
///             | (define-op NAME (dims D*) (kraus MAT*))
///   VEC      := (v RE IM RE IM ...)
///   MAT      := (m VEC*)               rows of the matrix
///   tree     := (rule NAME (pre "F") (prog "P") (post "F")
///                 [(evidence EV*)] [(premises tree*)])
///             | (skip-rule "F")
///   EV       := (primary NAME*) | (auxiliary NAME*) | (op NAME (targets NAME*))
///             | (source "TEXT") | (samples N) | (seed N)
ProofScript parse_proof_script(const std::string &text, const Manifest &base = {});

ProofNode parse_proof(const std::string &text, const Manifest &base = {});

/// Prints a tree as a script. Projections, gates and operations that the
/// base manifest does not reproduce bit for bit are emitted as definitions.
std::string print_proof(const ProofNode &root, const Manifest &base = {});

/// Structural equality with exact (bitwise) bases and matrices.
bool identical(const ProofNode &a, const ProofNode &b);

}  // namespace qsl
