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

#include "qsl/syntax.hpp"

#include <cctype>
#include <cstdio>
#include <string>

namespace qsl {

namespace {

bool ident_start(char c) {
    return std::isalpha((unsigned char)c) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_' || c == '\'';
}

const char *const kSymbols[] = {":=", "|0>", "->", "..", "/\\", "\\/", ";", "[", "]", ",", "=", "(", ")", "*", "^", "-", "+"};

}  // namespace

size_t Lexer::skip_space(size_t p) const {
    while (p < text_.size()) {
        char c = text_[p];
        if (std::isspace((unsigned char)c)) {
            p++;
        } else if (c == '#') {
            while (p < text_.size() && text_[p] != '\n') {
                p++;
            }
        } else {
            break;
        }
    }
    return p;
}

void Lexer::locate(size_t p, int &line, int &col) const {
    line = 1;
    col = 1;
    for (size_t i = 0; i < p && i < text_.size(); i++) {
        if (text_[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
}

Token Lexer::peek() const {
    size_t p = skip_space(pos_);
    Token t;
    locate(p, t.line, t.col);
    if (p >= text_.size()) {
        t.kind = TokKind::End;
        t.end = p;
        return t;
    }
    char c = text_[p];
    if (ident_start(c)) {
        size_t q = p;
        while (q < text_.size() && ident_char(text_[q])) {
            q++;
        }
        t.kind = TokKind::Ident;
        t.text = text_.substr(p, q - p);
        t.end = q;
        return t;
    }
    if (std::isdigit((unsigned char)c) || (c == '.' && p + 1 < text_.size() && std::isdigit((unsigned char)text_[p + 1]))) {
        size_t q = p;
        while (q < text_.size() && std::isdigit((unsigned char)text_[q])) {
            q++;
        }
        // a range ".." is not a decimal point
        if (q + 1 < text_.size() && text_[q] == '.' && text_[q + 1] != '.') {
            q++;
            while (q < text_.size() && std::isdigit((unsigned char)text_[q])) {
                q++;
            }
        }
        if (q < text_.size() && (text_[q] == 'e' || text_[q] == 'E')) {
            size_t r = q + 1;
            if (r < text_.size() && (text_[r] == '+' || text_[r] == '-')) {
                r++;
            }
            if (r < text_.size() && std::isdigit((unsigned char)text_[r])) {
                while (r < text_.size() && std::isdigit((unsigned char)text_[r])) {
                    r++;
                }
                q = r;
            }
        }
        t.kind = TokKind::Number;
        t.text = text_.substr(p, q - p);
        t.end = q;
        return t;
    }
    for (const char *s : kSymbols) {
        std::string sym(s);
        if (text_.compare(p, sym.size(), sym) == 0) {
            t.kind = TokKind::Sym;
            t.text = sym;
            t.end = p + sym.size();
            return t;
        }
    }
    fail_at(t, std::string("unexpected character '") + c + "'");
}

Token Lexer::next() {
    Token t = peek();
    pos_ = t.end;
    return t;
}

bool Lexer::accept(const std::string &sym) {
    Token t = peek();
    if ((t.kind == TokKind::Sym || t.kind == TokKind::Ident) && t.text == sym) {
        pos_ = t.end;
        return true;
    }
    return false;
}

void Lexer::expect(const std::string &sym) {
    Token t = peek();
    if (!accept(sym)) {
        fail_at(t, "expected '" + sym + "' but found '" + (t.kind == TokKind::End ? "end of input" : t.text) + "'");
    }
}

std::string Lexer::expect_ident() {
    Token t = next();
    if (t.kind != TokKind::Ident) {
        fail_at(t, "expected identifier but found '" + (t.kind == TokKind::End ? "end of input" : t.text) + "'");
    }
    return t.text;
}

long Lexer::expect_int() {
    Token t = peek();
    bool neg = accept("-");
    Token n = next();
    if (n.kind != TokKind::Number || n.text.find_first_not_of("0123456789") != std::string::npos) {
        fail_at(t, "expected integer");
    }
    long v = std::stol(n.text);
    return neg ? -v : v;
}

double Lexer::expect_number() {
    Token t = peek();
    bool neg = accept("-");
    if (!neg) {
        accept("+");
    }
    Token n = next();
    if (n.kind != TokKind::Number) {
        fail_at(t, "expected number");
    }
    double v = std::stod(n.text);
    return neg ? -v : v;
}

std::string Lexer::raw_word() {
    size_t p = skip_space(pos_);
    size_t q = p;
    while (q < text_.size() && !std::isspace((unsigned char)text_[q]) && text_[q] != '[') {
        q++;
    }
    if (q == p) {
        fail("expected a name");
    }
    pos_ = q;
    return text_.substr(p, q - p);
}

void Lexer::fail(const std::string &msg) const {
    Token t;
    locate(skip_space(pos_), t.line, t.col);
    fail_at(t, msg);
}

void Lexer::fail_at(const Token &t, const std::string &msg) const {
    throw ParseError(msg, t.line, t.col);
}

std::string format_double(double x) {
    if (x == 0) {
        return "0";
    }
    char buf[40];
    // shortest form that reads back to the same double
    for (int prec = 1; prec <= 17; prec++) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        if (std::stod(buf) == x) {
            break;
        }
    }
    return buf;
}

}  // namespace qsl
