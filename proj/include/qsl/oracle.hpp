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
#include <random>
#include <vector>

#include "qsl/formula.hpp"
#include "qsl/program.hpp"

namespace qsl {

using Rng = std::mt19937_64;

Vector haar_vector(Index d, Rng &rng);
/// QR of a complex Gaussian matrix with the diagonal phases fixed.
Matrix haar_unitary(Index d, Rng &rng);
/// First k columns of a Haar-random d x d unitary.
Matrix haar_isometry(Index d, Index k, Rng &rng);
/// Flat Dirichlet weights.
std::vector<double> dirichlet(size_t k, Rng &rng);
/// Mixture of up to max_rank Haar pure states with Dirichlet weights.
QState random_state(const RegSet &dom, Rng &rng, int max_rank = 4);
/// Random subspace of the given rank.
Subspace random_subspace(Index d, Index rank, Rng &rng);
/// Random projection of random rank (0 .. dim) on dom.
Projection random_projection(const RegSet &dom, Rng &rng);

/// Extends sigma to a state on v whose restriction to dom(sigma) is sigma,
/// with random correlations (purification-style or classical).
QState random_extension(const QState &sigma, const RegSet &v, Rng &rng);

struct SampleSet {
    std::vector<QState> states;
    /// Set when a conjunction ran out of its rejection budget.
    bool exhausted = false;
};

/// States on v satisfying f. Every returned state is re-checked with the
/// satisfaction relation.
SampleSet sample_satisfying(const Formula &f, const RegSet &v, int n, uint64_t seed);

struct Counterexample {
    int index = 0;
    QState input;
    QState output;
    SatResult why;
};

struct Validation {
    bool ok = true;
    int samples = 0;
    bool sampler_exhausted = false;
    std::optional<Counterexample> counterexample;
};

/// Samples the precondition, runs the program, checks the postcondition.
Validation validate_triple(const Formula &pre, const Program &p, const Formula &post, const RegSet &v, int n,
                           uint64_t seed);

/// Random loop-free program over the given qubit variables; depth 0 is skip.
Program random_program(const std::vector<std::string> &qubits, int depth, uint64_t seed, const Manifest &manifest);

}  // namespace qsl
