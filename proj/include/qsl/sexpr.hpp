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

namespace qsl {

/// Symbols, double-quoted strings (no escapes) and lists. ';' starts a
/// comment running to the end of the line.
struct SExpr {
    enum Kind { Symbol, String, List } kind = List;
    std::string text;
    std::vector<SExpr> items;
    int line = 0;
    int col = 0;

    bool is_list() const {
        return kind == List;
    }
    bool is_atom() const {
        return kind != List;
    }
    /// Head symbol of a non-empty list, or empty.
    std::string head() const;
    /// Throws ParseError at this node's position.
    [[noreturn]] void fail(const std::string &msg) const;

    static SExpr symbol(std::string s);
    static SExpr string(std::string s);
    static SExpr list(std::vector<SExpr> items);
};

std::vector<SExpr> parse_sexprs(const std::string &text);

/// Single-line rendering.
std::string to_string(const SExpr &e);

}  // namespace qsl
