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

struct Gate {
    std::string name;
    std::vector<int> dims;
    Matrix matrix;
    /// Set for register permutations: new content of factor k is the old
    /// content of factor permutation[k].
    std::optional<std::vector<int>> permutation;
};

struct Measurement {
    std::string name;
    std::vector<int> dims;
    /// Projective outcomes, indexed by outcome label.
    std::vector<Matrix> projectors;
};

struct QuantumOperation {
    std::string name;
    std::vector<int> dims;
    std::vector<Matrix> kraus;

    /// sum_i E_i^dagger E_i == I within tol.
    bool trace_preserving(double tol) const;
};

/// Registry of named gates, measurements, projectors, channels and variable
/// dimensions. Built-in families are resolved against the argument
/// dimensions; user entries (from JSON) take precedence.
class Manifest {
   public:
    Manifest() = default;

    /// JSON layout: {"gates": {NAME: {"dims": [...], "matrix": [[[re, im], ...], ...]}},
    ///               "measurements": {NAME: {"dims": [...], "projectors": [MATRIX, ...]}},
    ///               "projectors": {NAME: {"dims": [...], "matrix": MATRIX} or {"dims", "vectors"}},
    ///               "channels": {NAME: {"dims": [...], "kraus": [MATRIX, ...]}},
    ///               "variables": {NAME: DIM}, "default_dim": 2}
    static Manifest from_json_text(const std::string &text);
    static Manifest from_file(const std::string &path);
    /// Writes the user entries in the layout above.
    std::string to_json_text() const;
    /// Merges other into this; other wins on conflicts.
    void merge(const Manifest &other);

    Gate gate(const std::string &name, const std::vector<int> &dims) const;
    Measurement measurement(const std::string &name, const std::vector<int> &dims) const;
    /// Projector matrix in the listed order of the argument dimensions.
    Matrix projector(const std::string &name, const std::vector<int> &dims) const;
    QuantumOperation channel(const std::string &name, const std::vector<int> &dims) const;

    void add_gate(const std::string &name, const std::vector<int> &dims, const Matrix &m);
    void add_measurement(const std::string &name, const std::vector<int> &dims, const std::vector<Matrix> &ps);
    void add_projector(const std::string &name, const std::vector<int> &dims, const Matrix &p);
    void add_channel(const std::string &name, const std::vector<int> &dims, const std::vector<Matrix> &kraus);

    void declare(const std::string &var, int dim);
    int var_dim(const std::string &var) const;
    const std::map<std::string, int> &variables() const {
        return vars_;
    }
    void set_default_dim(int d) {
        default_dim_ = d;
    }

   private:
    std::map<std::string, Gate> gates_;
    std::map<std::string, Measurement> measurements_;
    std::map<std::string, std::pair<std::vector<int>, Matrix>> projectors_;
    std::map<std::string, QuantumOperation> channels_;
    std::map<std::string, int> vars_;
    int default_dim_ = 2;
};

// Fixed operators used by the built-in families and the case studies.
namespace ops {
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();
Matrix phase_s();
Matrix phase_t();
Matrix cz();
Matrix cnot();
Matrix swap(int d);
/// |x_0 .. x_{n-1}> -> |x_{perm[0]} .. x_{perm[n-1]}>.
Matrix permutation(const std::vector<int> &dims, const std::vector<int> &perm);
Matrix basis_projector(int d, int k);
/// Standard maximally entangled state sum_j |j>|j> / sqrt(d), as a vector.
Vector mes_vector(int d);
/// Qutrit share states (1/sqrt 3) sum_k |k, k+i, k+2i>.
Vector share_state(int i);
/// Unitary sending |i,0,0> to the share state of i.
Matrix share_encoder();
/// Qutrit pair permutation |a,b> -> |b-a, 2a-b>, which sends the last two
/// shares of secret i to |i> on the first output.
Matrix share_recover();
/// Projector onto the span of the three share states.
Matrix share_space();
}  // namespace ops

}  // namespace qsl
