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

#include "qsl/sexpr.hpp"

#include <cctype>

#include "qsl/common.hpp"

namespace qsl {

std::string SExpr::head() const {
    if (kind != List || items.empty() || items[0].kind != Symbol) {
        return "";
    }
    return items[0].text;
}

void SExpr::fail(const std::string &msg) const {
    throw ParseError(msg, line, col);
}

SExpr SExpr::symbol(std::string s) {
    SExpr e;
    e.kind = Symbol;
    e.text = std::move(s);
    return e;
}

SExpr SExpr::string(std::string s) {
    SExpr e;
    e.kind = String;
    e.text = std::move(s);
    return e;
}

SExpr SExpr::list(std::vector<SExpr> items) {
    SExpr e;
    e.items = std::move(items);
    return e;
}

namespace {

class Reader {
   public:
    explicit Reader(const std::string &text) : text_(text) {
    }

    std::vector<SExpr> all() {
        std::vector<SExpr> out;
        while (true) {
            skip();
            if (pos_ >= text_.size()) {
                return out;
            }
            out.push_back(read());
        }
    }

   private:
    void skip() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            } else if (std::isspace((unsigned char)c)) {
                advance();
            } else {
                return;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            line_++;
            col_ = 1;
        } else {
            col_++;
        }
        pos_++;
    }

    SExpr read() {
        SExpr e;
        e.line = line_;
        e.col = col_;
        char c = text_[pos_];
        if (c == ')') {
            throw ParseError("unexpected ')'", line_, col_);
        }
        if (c == '(') {
            advance();
            e.kind = SExpr::List;
            while (true) {
                skip();
                if (pos_ >= text_.size()) {
                    throw ParseError("unclosed '('", e.line, e.col);
                }
                if (text_[pos_] == ')') {
                    advance();
                    return e;
                }
                e.items.push_back(read());
            }
        }
        if (c == '"') {
            advance();
            e.kind = SExpr::String;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                e.text += text_[pos_];
                advance();
            }
            if (pos_ >= text_.size()) {
                throw ParseError("unterminated string", e.line, e.col);
            }
            advance();
            return e;
        }
        e.kind = SExpr::Symbol;
        while (pos_ < text_.size()) {
            char d = text_[pos_];
            if (std::isspace((unsigned char)d) || d == '(' || d == ')' || d == '"' || d == ';') {
                break;
            }
            e.text += d;
            advance();
        }
        return e;
    }

    const std::string &text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

std::vector<SExpr> parse_sexprs(const std::string &text) {
    return Reader(text).all();
}

std::string to_string(const SExpr &e) {
    switch (e.kind) {
        case SExpr::Symbol:
            return e.text;
        case SExpr::String:
            if (e.text.find('"') != std::string::npos) {
                throw DomainError("string atoms cannot contain '\"'");
            }
            return "\"" + e.text + "\"";
        case SExpr::List: {
            std::string out = "(";
            for (size_t k = 0; k < e.items.size(); k++) {
                out += (k ? " " : "") + to_string(e.items[k]);
            }
            return out + ")";
        }
    }
    return "";
}

}  // namespace qsl
