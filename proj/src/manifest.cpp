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

#include "qsl/manifest.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qsl {

using nlohmann::json;

namespace ops {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix hadamard() {
    Matrix m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

Matrix phase_s() {
    Matrix m(2, 2);
    m << 1, 0, 0, cplx(0, 1);
    return m;
}

Matrix phase_t() {
    Matrix m(2, 2);
    m << 1, 0, 0, std::polar(1.0, M_PI / 4);
    return m;
}

Matrix cz() {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

Matrix cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

Matrix swap(int d) {
    return permutation({d, d}, {1, 0});
}

Matrix permutation(const std::vector<int> &dims, const std::vector<int> &perm) {
    size_t n = dims.size();
    if (perm.size() != n) {
        throw DomainError("permutation length mismatch");
    }
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= (int)n || seen[p]) {
            throw DomainError("not a permutation");
        }
        seen[p] = true;
    }
    for (size_t k = 0; k < n; k++) {
        if (dims[k] != dims[perm[k]]) {
            throw DomainError("permutation mixes registers of different dimension");
        }
    }
    Index d = total_dim(dims);
    Matrix m = Matrix::Zero(d, d);
    std::vector<int> digits(n);
    for (Index col = 0; col < d; col++) {
        Index rem = col;
        for (size_t k = n; k-- > 0;) {
            digits[k] = (int)(rem % dims[k]);
            rem /= dims[k];
        }
        Index row = 0;
        for (size_t k = 0; k < n; k++) {
            row = row * dims[k] + digits[perm[k]];
        }
        m(row, col) = 1;
    }
    return m;
}

Matrix basis_projector(int d, int k) {
    Matrix m = Matrix::Zero(d, d);
    m(k, k) = 1;
    return m;
}

Vector mes_vector(int d) {
    Vector v = Vector::Zero((Index)d * d);
    for (int j = 0; j < d; j++) {
        v(j * d + j) = 1;
    }
    return v / std::sqrt((double)d);
}

Vector share_state(int i) {
    Vector v = Vector::Zero(27);
    for (int k = 0; k < 3; k++) {
        int a = k, b = (k + i) % 3, c = (k + 2 * i) % 3;
        v(a * 9 + b * 3 + c) = 1;
    }
    return v / std::sqrt(3.0);
}

Matrix share_encoder() {
    // Columns |i,0,0> carry the share states; the remaining columns are the
    // standard basis orthonormalized against them.
    Matrix u = Matrix::Zero(27, 27);
    std::vector<bool> filled(27, false);
    for (int i = 0; i < 3; i++) {
        u.col(i * 9) = share_state(i);
        filled[i * 9] = true;
    }
    int next = 0;
    for (Index col = 0; col < 27; col++) {
        if (filled[col]) {
            continue;
        }
        while (true) {
            Vector v = Vector::Zero(27);
            v(next++) = 1;
            for (Index c = 0; c < 27; c++) {
                if (filled[c]) {
                    v -= u.col(c) * (u.col(c).adjoint() * v)(0);
                }
            }
            if (v.norm() > 1e-6) {
                u.col(col) = v / v.norm();
                filled[col] = true;
                break;
            }
        }
    }
    return u;
}

Matrix share_recover() {
    Matrix m = Matrix::Zero(9, 9);
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            int x = ((b - a) % 3 + 3) % 3;
            int y = ((2 * a - b) % 3 + 3) % 3;
            m(x * 3 + y, a * 3 + b) = 1;
        }
    }
    return m;
}

Matrix share_space() {
    Matrix p = Matrix::Zero(27, 27);
    for (int i = 0; i < 3; i++) {
        Vector v = share_state(i);
        p += v * v.adjoint();
    }
    return p;
}

}  // namespace ops

namespace {

bool split_power(const std::string &name, std::string &base, double &exponent) {
    auto caret = name.find('^');
    if (caret == std::string::npos) {
        return false;
    }
    base = name.substr(0, caret);
    std::string rest = name.substr(caret + 1);
    size_t used = 0;
    try {
        exponent = std::stod(rest, &used);
    } catch (const std::exception &) {
        throw StructuralError("bad exponent in gate name " + name);
    }
    if (used != rest.size()) {
        throw StructuralError("bad exponent in gate name " + name);
    }
    return true;
}

void require_dims(const std::string &name, const std::vector<int> &got, const std::vector<int> &want) {
    if (got != want) {
        std::string w, g;
        for (int d : want) {
            w += std::to_string(d) + " ";
        }
        for (int d : got) {
            g += std::to_string(d) + " ";
        }
        throw DomainError(name + " expects dimensions [ " + w + "] but got [ " + g + "]");
    }
}

std::optional<Matrix> builtin_gate(const std::string &name, const std::vector<int> &dims,
                                   std::optional<std::vector<int>> &perm) {
    if (name == "I") {
        Index d = total_dim(dims);
        return Matrix::Identity(d, d);
    }
    static const std::map<std::string, Matrix (*)()> single = {
        {"X", ops::pauli_x}, {"Y", ops::pauli_y},   {"Z", ops::pauli_z},     {"H", ops::hadamard},
        {"S", ops::phase_s}, {"sqrtZ", ops::phase_s}, {"T", ops::phase_t},
    };
    if (auto it = single.find(name); it != single.end()) {
        require_dims(name, dims, {2});
        return it->second();
    }
    if (name == "CZ") {
        require_dims(name, dims, {2, 2});
        return ops::cz();
    }
    if (name == "CNOT") {
        require_dims(name, dims, {2, 2});
        return ops::cnot();
    }
    if (name == "SWAP") {
        if (dims.size() != 2 || dims[0] != dims[1]) {
            throw DomainError("SWAP expects two registers of equal dimension");
        }
        perm = std::vector<int>{1, 0};
        return ops::swap(dims[0]);
    }
    if (name.rfind("PERM_", 0) == 0) {
        std::vector<int> p;
        std::stringstream ss(name.substr(5));
        std::string item;
        while (std::getline(ss, item, '_')) {
            try {
                p.push_back(std::stoi(item));
            } catch (const std::exception &) {
                throw StructuralError("bad permutation gate " + name);
            }
        }
        if (p.size() != dims.size()) {
            throw DomainError(name + " arity does not match its arguments");
        }
        perm = p;
        return ops::permutation(dims, p);
    }
    if (name == "U_enc") {
        require_dims(name, dims, {3, 3, 3});
        return ops::share_encoder();
    }
    if (name == "U_rec") {
        require_dims(name, dims, {3, 3});
        return ops::share_recover();
    }
    return std::nullopt;
}

Matrix parse_matrix(const json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw StructuralError("matrix must be a nested list");
    }
    Index rows = (Index)j.size();
    Index cols = (Index)j[0].size();
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; r++) {
        if ((Index)j[r].size() != cols) {
            throw StructuralError("ragged matrix");
        }
        for (Index c = 0; c < cols; c++) {
            const json &e = j[r][c];
            if (e.is_number()) {
                m(r, c) = e.get<double>();
            } else if (e.is_array() && e.size() == 2) {
                m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
            } else {
                throw StructuralError("matrix entries must be numbers or [re, im] pairs");
            }
        }
    }
    return m;
}

std::vector<int> parse_dims(const json &j) {
    std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    for (int d : dims) {
        if (d < 1) {
            throw StructuralError("dimensions must be positive");
        }
    }
    return dims;
}

}  // namespace

bool QuantumOperation::trace_preserving(double tol) const {
    if (kraus.empty()) {
        return false;
    }
    Matrix sum = Matrix::Zero(kraus[0].cols(), kraus[0].cols());
    for (const auto &k : kraus) {
        sum += k.adjoint() * k;
    }
    return (sum - Matrix::Identity(sum.rows(), sum.cols())).norm() <= tol;
}

Manifest Manifest::from_json_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("manifest: ") + e.what(), 1, (int)e.byte);
    }
    Manifest m;
    try {
        if (j.contains("gates")) {
            for (const auto &[name, g] : j["gates"].items()) {
                m.add_gate(name, parse_dims(g), parse_matrix(g.at("matrix")));
            }
        }
        if (j.contains("measurements")) {
            for (const auto &[name, g] : j["measurements"].items()) {
                std::vector<Matrix> ps;
                for (const auto &p : g.at("projectors")) {
                    ps.push_back(parse_matrix(p));
                }
                m.add_measurement(name, parse_dims(g), ps);
            }
        }
        if (j.contains("projectors")) {
            for (const auto &[name, g] : j["projectors"].items()) {
                if (g.contains("matrix")) {
                    m.add_projector(name, parse_dims(g), parse_matrix(g["matrix"]));
                } else {
                    Matrix v = parse_matrix(g.at("vectors")).transpose();
                    m.add_projector(name, parse_dims(g), Subspace::span(v).projector());
                }
            }
        }
        if (j.contains("channels")) {
            for (const auto &[name, g] : j["channels"].items()) {
                std::vector<Matrix> ks;
                for (const auto &k : g.at("kraus")) {
                    ks.push_back(parse_matrix(k));
                }
                m.add_channel(name, parse_dims(g), ks);
            }
        }
        if (j.contains("variables")) {
            for (const auto &[name, d] : j["variables"].items()) {
                m.declare(name, d.get<int>());
            }
        }
        if (j.contains("default_dim")) {
            m.set_default_dim(j["default_dim"].get<int>());
        }
    } catch (const json::exception &e) {
        throw StructuralError(std::string("manifest: ") + e.what());
    }
    return m;
}

Manifest Manifest::from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open manifest " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

namespace {

json matrix_json(const Matrix &m) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); c++) {
            if (m(r, c).imag() == 0) {
                row.push_back(m(r, c).real());
            } else {
                row.push_back({m(r, c).real(), m(r, c).imag()});
            }
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::string Manifest::to_json_text() const {
    json j = json::object();
    for (const auto &[name, g] : gates_) {
        j["gates"][name] = {{"dims", g.dims}, {"matrix", matrix_json(g.matrix)}};
    }
    for (const auto &[name, m] : measurements_) {
        json ps = json::array();
        for (const auto &p : m.projectors) {
            ps.push_back(matrix_json(p));
        }
        j["measurements"][name] = {{"dims", m.dims}, {"projectors", ps}};
    }
    for (const auto &[name, p] : projectors_) {
        j["projectors"][name] = {{"dims", p.first}, {"matrix", matrix_json(p.second)}};
    }
    for (const auto &[name, c] : channels_) {
        json ks = json::array();
        for (const auto &k : c.kraus) {
            ks.push_back(matrix_json(k));
        }
        j["channels"][name] = {{"dims", c.dims}, {"kraus", ks}};
    }
    for (const auto &[name, d] : vars_) {
        j["variables"][name] = d;
    }
    j["default_dim"] = default_dim_;
    return j.dump(1) + "\n";
}

void Manifest::merge(const Manifest &other) {
    for (const auto &[k, v] : other.gates_) {
        gates_[k] = v;
    }
    for (const auto &[k, v] : other.measurements_) {
        measurements_[k] = v;
    }
    for (const auto &[k, v] : other.projectors_) {
        projectors_[k] = v;
    }
    for (const auto &[k, v] : other.channels_) {
        channels_[k] = v;
    }
    for (const auto &[k, v] : other.vars_) {
        vars_[k] = v;
    }
    default_dim_ = other.default_dim_;
}

Gate Manifest::gate(const std::string &name, const std::vector<int> &dims) const {
    if (auto it = gates_.find(name); it != gates_.end()) {
        require_dims(name, dims, it->second.dims);
        return it->second;
    }
    std::optional<std::vector<int>> perm;
    if (auto m = builtin_gate(name, dims, perm)) {
        return Gate{name, dims, *m, perm};
    }
    std::string base;
    double a = 0;
    if (split_power(name, base, a)) {
        Gate g = gate(base, dims);
        return Gate{name, dims, spectral_power(g.matrix, a), std::nullopt};
    }
    throw StructuralError("unknown gate " + name);
}

Measurement Manifest::measurement(const std::string &name, const std::vector<int> &dims) const {
    if (auto it = measurements_.find(name); it != measurements_.end()) {
        require_dims(name, dims, it->second.dims);
        return it->second;
    }
    Index d = total_dim(dims);
    if (name == "M") {
        Measurement m{name, dims, {}};
        for (Index k = 0; k < d; k++) {
            m.projectors.push_back(ops::basis_projector((int)d, (int)k));
        }
        return m;
    }
    if (name == "Mpm") {
        require_dims(name, dims, {2});
        Vector plus(2), minus(2);
        plus << 1, 1;
        minus << 1, -1;
        plus /= std::sqrt(2.0);
        minus /= std::sqrt(2.0);
        return Measurement{name, dims, {plus * plus.adjoint(), minus * minus.adjoint()}};
    }
    throw StructuralError("unknown measurement " + name);
}

Matrix Manifest::projector(const std::string &name, const std::vector<int> &dims) const {
    if (auto it = projectors_.find(name); it != projectors_.end()) {
        require_dims(name, dims, it->second.first);
        return it->second.second;
    }
    Index d = total_dim(dims);
    if (name == "I") {
        return Matrix::Identity(d, d);
    }
    if (name == "zero" || name == "one") {
        if (dims.size() != 1) {
            throw DomainError(name + " expects one register");
        }
        return ops::basis_projector(dims[0], name == "zero" ? 0 : 1);
    }
    if (name == "plus" || name == "minus") {
        require_dims(name, dims, {2});
        Vector v(2);
        v << 1, (name == "plus" ? 1 : -1);
        v /= std::sqrt(2.0);
        return v * v.adjoint();
    }
    if (name == "Phi+" || name == "Phi-" || name == "Psi+" || name == "Psi-") {
        require_dims(name, dims, {2, 2});
        Vector v = Vector::Zero(4);
        double s = name[3] == '+' ? 1 : -1;
        if (name[1] == 'h') {
            v(0) = 1;
            v(3) = s;
        } else {
            v(1) = 1;
            v(2) = s;
        }
        v /= std::sqrt(2.0);
        return v * v.adjoint();
    }
    if (name == "PS") {
        require_dims(name, dims, {3, 3, 3});
        return ops::share_space();
    }
    if (name == "MES") {
        // first half of the registers paired with the second half
        size_t n = dims.size();
        if (n % 2 != 0) {
            throw DomainError("MES expects an even number of registers");
        }
        std::vector<int> a(dims.begin(), dims.begin() + n / 2), b(dims.begin() + n / 2, dims.end());
        if (a != b) {
            throw DomainError("MES halves differ in dimension");
        }
        Vector v = ops::mes_vector((int)total_dim(a));
        return v * v.adjoint();
    }
    auto dot = name.rfind('.');
    if (dot != std::string::npos) {
        std::string meas = name.substr(0, dot);
        int k = -1;
        try {
            k = std::stoi(name.substr(dot + 1));
        } catch (const std::exception &) {
            throw StructuralError("unknown projector " + name);
        }
        Measurement m = measurement(meas, dims);
        if (k < 0 || k >= (int)m.projectors.size()) {
            throw StructuralError("measurement " + meas + " has no outcome " + std::to_string(k));
        }
        return m.projectors[k];
    }
    throw StructuralError("unknown projector " + name);
}

QuantumOperation Manifest::channel(const std::string &name, const std::vector<int> &dims) const {
    if (auto it = channels_.find(name); it != channels_.end()) {
        require_dims(name, dims, it->second.dims);
        return it->second;
    }
    Index d = total_dim(dims);
    if (name == "reset") {
        QuantumOperation op{name, dims, {}};
        for (Index n = 0; n < d; n++) {
            Matrix k = Matrix::Zero(d, d);
            k(0, n) = 1;
            op.kraus.push_back(k);
        }
        return op;
    }
    if (name == "dephase") {
        QuantumOperation op{name, dims, {}};
        for (Index n = 0; n < d; n++) {
            op.kraus.push_back(ops::basis_projector((int)d, (int)n));
        }
        return op;
    }
    return QuantumOperation{name, dims, {gate(name, dims).matrix}};
}

void Manifest::add_gate(const std::string &name, const std::vector<int> &dims, const Matrix &m) {
    Index d = total_dim(dims);
    if (m.rows() != d || m.cols() != d) {
        throw StructuralError("gate " + name + " has the wrong size");
    }
    if (!is_unitary(m, 1e-8)) {
        throw StructuralError("gate " + name + " is not unitary");
    }
    gates_[name] = Gate{name, dims, m, std::nullopt};
}

void Manifest::add_measurement(const std::string &name, const std::vector<int> &dims, const std::vector<Matrix> &ps) {
    Index d = total_dim(dims);
    Matrix sum = Matrix::Zero(d, d);
    for (const auto &p : ps) {
        if (p.rows() != d || !is_projector(p, 1e-8)) {
            throw StructuralError("measurement " + name + " has a non-projector outcome");
        }
        sum += p;
    }
    if ((sum - Matrix::Identity(d, d)).norm() > 1e-8) {
        throw StructuralError("measurement " + name + " outcomes do not sum to the identity");
    }
    measurements_[name] = Measurement{name, dims, ps};
}

void Manifest::add_projector(const std::string &name, const std::vector<int> &dims, const Matrix &p) {
    if (p.rows() != total_dim(dims) || !is_projector(p, 1e-8)) {
        throw StructuralError("projector " + name + " is not a projector of the declared size");
    }
    projectors_[name] = {dims, p};
}

void Manifest::add_channel(const std::string &name, const std::vector<int> &dims, const std::vector<Matrix> &kraus) {
    QuantumOperation op{name, dims, kraus};
    for (const auto &k : kraus) {
        if (k.rows() != total_dim(dims) || k.cols() != total_dim(dims)) {
            throw StructuralError("channel " + name + " has a Kraus operator of the wrong size");
        }
    }
    if (!op.trace_preserving(1e-8)) {
        throw StructuralError("channel " + name + " is not trace preserving");
    }
    channels_[name] = op;
}

void Manifest::declare(const std::string &var, int dim) {
    if (dim < 1) {
        throw StructuralError("variable " + var + " needs a positive dimension");
    }
    vars_[var] = dim;
}

int Manifest::var_dim(const std::string &var) const {
    auto it = vars_.find(var);
    return it == vars_.end() ? default_dim_ : it->second;
}

}  // namespace qsl
