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

// Regenerates the shipped fixtures under DIR (default: data/).
//   qsl_fixtures [DIR]

#include <filesystem>
#include <fstream>
#include <iostream>

#include "qsl/qsl.hpp"

using namespace qsl;
namespace fs = std::filesystem;

namespace {

fs::path root;

void write(const fs::path &rel, const std::string &text) {
    fs::path p = root / rel;
    fs::create_directories(p.parent_path());
    std::ofstream(p) << text;
    std::cout << "wrote " << p.string() << "\n";
}

void proof(const std::string &name, const ProofNode &n, const Manifest &m) {
    std::string text = print_proof(n, m);
    if (!identical(parse_proof(text), n)) {
        throw Error("round trip changed " + name);
    }
    write("proofs/" + name + ".proof", text);
}

void program(const std::string &name, const Program &p, const Manifest &m) {
    write("programs/" + name + ".qw", to_string(p) + "\n");
    write("manifests/" + name + ".json", m.to_json_text());
}

}  // namespace

int main(int argc, char **argv) {
    root = argc > 1 ? argv[1] : "data";
    try {
        for (int n = 1; n <= 3; n++) {
            std::string k = std::to_string(n);
            program("qotp" + k, cases::build_qotp(n), cases::qotp_manifest(n));
            proof("qotp" + k, n == 1 ? cases::qotp1_proof() : cases::qotp_proof(n), {});
            program("qss" + k, cases::build_qss(n), cases::qss_manifest(n));
            proof("qss" + k, cases::qss_proof(n), {});
        }
        for (int n = 1; n <= 2; n++) {
            std::string k = std::to_string(n);
            program("qss_e" + k, cases::build_qss_e(n), cases::qss_e_manifest(n));
            proof("qss_e" + k, cases::qss_e_proof(n), {});
        }
        Manifest bell = cases::bell_phase_manifest();
        program("bell_phase", prog::seq(prog::apply(bell.gate("sqrtZ", {2}), {"q1"}),
                                         prog::apply(bell.gate("sqrtZ", {2}), {"q2"})),
                bell);
        proof("bell_phase", cases::bell_phase_proof(), {});

        auto inst = cases::IsingInstance::reference(0.5, 0.3, 0.7);
        program("vqa", cases::build_vqa(inst), cases::vqa_manifest(inst));
        auto r = cases::vqa_preconditions(inst, 2);
        for (size_t k = 0; k < r.proofs.size(); k++) {
            proof("vqa_p" + std::to_string(k), r.proofs[k], {});
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
