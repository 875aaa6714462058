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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qsl {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Global numeric tolerance. Defaults to 1e-9.
double tolerance();
void set_tolerance(double tol);

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed program, formula or proof text.
class ParseError : public Error {
   public:
    ParseError(const std::string &msg, int line, int col)
        : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col), message(msg) {
    }
    int line;
    int col;
    std::string message;
};

/// Domain or dimension mismatch between a state, operator or formula.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// Ill-formed structure, e.g. a measurement with the wrong outcome set.
class StructuralError : public Error {
   public:
    using Error::Error;
};

/// Operation outside the implemented fragment.
class UnsupportedError : public Error {
   public:
    using Error::Error;
};

}  // namespace qsl
