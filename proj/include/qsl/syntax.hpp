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

#include "qsl/common.hpp"

namespace qsl {

enum class TokKind { End, Ident, Number, Sym };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    int line = 1;
    int col = 1;
    size_t end = 0;
};

/// On-demand lexer shared by the program and formula parsers. Comments run
/// from '#' to the end of the line.
class Lexer {
   public:
    explicit Lexer(std::string text) : text_(std::move(text)) {
    }

    Token peek() const;
    Token next();
    bool at_end() const {
        return peek().kind == TokKind::End;
    }
    bool accept(const std::string &sym);
    void expect(const std::string &sym);
    std::string expect_ident();
    long expect_int();
    double expect_number();
    /// Reads a whitespace-delimited word verbatim (stops before '[').
    std::string raw_word();

    size_t pos() const {
        return pos_;
    }
    void seek(size_t p) {
        pos_ = p;
    }
    [[noreturn]] void fail(const std::string &msg) const;
    [[noreturn]] void fail_at(const Token &t, const std::string &msg) const;

   private:
    size_t skip_space(size_t p) const;
    void locate(size_t p, int &line, int &col) const;

    std::string text_;
    size_t pos_ = 0;
};

std::string format_double(double x);

}  // namespace qsl
