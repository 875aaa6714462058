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

// Shared test code: brute-force oracles that do not go through the library
// kernels, random formula generators, and the property suites used by both
// the unit tests and the acceptance binary.

#pragma once

#include <string>
#include <vector>

#include "qsl/qsl.hpp"

namespace qsl::testing {

// ---- oracles (plain index loops) ----

Matrix naive_kron(const Matrix &a, const Matrix &b);
/// Partial trace by explicit summation over multi-indices; keep is sorted.
Matrix naive_partial_trace(const Matrix &m, const std::vector<int> &dims, const std::vector<int> &keep);
/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix &h);
/// Range containment for projectors: big * small == small.
bool projector_contains(const Matrix &big, const Matrix &small, double tol);
/// |0><0| on q (of dimension dq) tensored with t, as a projection on dom(t) + q.
Projection zero_tensor(const std::string &q, int dq, const Projection &t);
/// Null space of a matrix via full SVD.
Matrix null_space(const Matrix &a, double tol);

Projection named(const std::string &name, const std::vector<std::string> &regs, const std::vector<int> &dims);
Matrix ket_projector(const Vector &v);
Vector ket(std::initializer_list<cplx> entries);

// ---- generators ----

/// x, y, z qubits and w a qutrit.
RegSet default_pool();
RegSet random_subset(const RegSet &pool, Rng &rng, size_t max_size);
/// Projection of the given rank (clamped) on dom.
Projection projection_of_rank(const RegSet &dom, Index rank, Rng &rng);

enum class Fragment { Any, Res, Sp };
/// Random formula whose free variables lie in pool.
Formula random_formula(const RegSet &pool, Rng &rng, int depth, Fragment frag);

// ---- property suites ----

struct SuiteResult {
    std::string name;
    int trials = 0;
    int counterexamples = 0;
    std::string first;
    double seconds = 0;

    bool ok() const {
        return counterexamples == 0 && trials > 0;
    }
};

SuiteResult restriction_suite(int trials, uint64_t seed);
SuiteResult cm_suite(int trials, uint64_t seed);
SuiteResult sp_suite(int trials, uint64_t seed);
SuiteResult modification_suite(int trials, uint64_t seed);
SuiteResult wp_fuzz_suite(int trials, uint64_t seed);

SuiteResult partial_trace_suite(int random_trials, uint64_t seed);
SuiteResult tensor_suite(int random_trials, uint64_t seed);
SuiteResult ceil_suite(int random_trials, uint64_t seed);
SuiteResult loewner_suite(int random_trials, uint64_t seed);

/// Root of the shipped fixture tree.
std::string data_path(const std::string &rel);
std::string read_text(const std::string &path);

}  // namespace qsl::testing
