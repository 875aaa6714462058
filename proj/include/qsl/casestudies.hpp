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

#include <string>
#include <vector>

#include "qsl/manifest.hpp"
#include "qsl/proof.hpp"

namespace qsl::cases {

// ---- one-time pad ----

/// Names of the key and data registers of copy i (1-based). With n == 1 the
/// names carry no index.
struct PadRegisters {
    std::string a, b, q;
};
PadRegisters qotp_registers(int n, int i);

Program qotp_block(const PadRegisters &r, const Manifest &m);
Program build_qotp(int n);
Manifest qotp_manifest(int n);

// ---- secret sharing ----

struct ShareRegisters {
    std::string p, q, r;
};
ShareRegisters qss_registers(int n, int i);

/// q := |0>; r := |0>; p, q, r := U_enc[p, q, r]
Program share_block(const ShareRegisters &r, const Manifest &m);
Program build_qss(int n);
Manifest qss_manifest(int n);

/// Secret sharing against an eavesdropper holding h1..hn, coin c.
Program eavesdrop_round(int i, const Manifest &m);
Program build_qss_e(int n);
Manifest qss_e_manifest(int n);

// ---- variational circuit on an Ising grid ----

struct IsingInstance {
    int n = 2;
    /// n x n local fields.
    std::vector<std::vector<int>> h;
    /// (n-1) x n couplings between q(i,j) and q(i+1,j).
    std::vector<std::vector<int>> jr;
    /// n x (n-1) couplings between q(i,j) and q(i,j+1).
    std::vector<std::vector<int>> jc;
    double alpha = 0;
    double beta = 0;
    double gamma = 0;

    /// The 2 x 2 reference instance.
    static IsingInstance reference(double alpha, double beta, double gamma);
    /// Register name of grid site (i, j), 1-based.
    static std::string site(int i, int j);
    std::vector<std::string> sites() const;
    std::vector<std::string> copies() const;
};

Manifest vqa_manifest(const IsingInstance &inst);
/// Column j: X^alpha and Z^beta on each site, then the column couplings.
Program column_block(const IsingInstance &inst, int j, const Manifest &m);
/// Row i: the row couplings.
Program row_block(const IsingInstance &inst, int i, const Manifest &m);
Program build_vqa(const IsingInstance &inst);

/// Hamiltonian in the canonical site order.
Matrix ising_hamiltonian(const IsingInstance &inst);

struct SpectralData {
    std::vector<double> energies;
    std::vector<Matrix> projectors;
};
/// Increasing eigenvalues with degenerate ones merged within tol.
SpectralData spectrum(const Matrix &h, double tol = 1e-8);

/// Lower bound E0 + sum_{i=0..n} (E_{i+1} - E_i) delta_i.
double energy_bound(const SpectralData &spec, const std::vector<double> &overlaps);

struct VqaResult {
    /// P_k is a precondition for I - Q_0 - ... - Q_k.
    std::vector<Projection> preconditions;
    std::vector<double> overlaps;
    std::vector<ProofNode> proofs;
    /// Largest projector distance between P_k and the weakest precondition
    /// computed directly from the circuit.
    double wp_gap = 0;
};

VqaResult vqa_preconditions(const IsingInstance &inst, int count = 2);

// ---- semantic regressions ----

/// Largest Frobenius distance between the output marginal on `keep` and the
/// maximally mixed state, over random pure states on `inputs` (every other
/// register starts in |0>).
double uniform_marginal_gap(const Program &p, const RegSet &dom, const std::vector<std::string> &inputs,
                            const std::vector<std::string> &keep, int trials, uint64_t seed);

/// tr(H sigma) for the circuit output sigma on input |0...0>.
double vqa_energy(const IsingInstance &inst);

// ---- proof trees ----

/// {top} q := |0>; r := |0>; U_enc {P_S}
ProofNode share_proof(const ShareRegisters &r, const Manifest &m);
ProofNode qss_proof(int n);
ProofNode qss_e_proof(int n);
/// Imported single-copy facts glued by FrameU and Seq.
ProofNode qotp_proof(int n);
/// Single copy: key preparation derived, the branching imported.
ProofNode qotp1_proof();

/// Two half-phase gates carry one Bell state to another; proved by pushing
/// out to auxiliary copies and pulling back.
ProofNode bell_phase_proof();
Manifest bell_phase_manifest();

/// Local pushes, gluing and the entangled-predicate step, for any unitary
/// program given as disjoint blocks. `post` lives on the primary registers.
ProofNode entangled_pullback(const std::vector<Program> &blocks, const std::vector<std::vector<std::string>> &block_regs,
                             const Projection &post, const Manifest &m);

/// Left-nested Seq over a chain whose adjacent assertions agree.
ProofNode seq_chain(const std::vector<ProofNode> &parts);

/// Auxiliary copy name of a register.
std::string copy_name(const std::string &v);

}  // namespace qsl::cases
