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

#include "qsl/formula.hpp"
#include "qsl/syntax.hpp"

namespace qsl {

namespace {

class FormulaParser {
   public:
    FormulaParser(const std::string &text, const Manifest &m, const ProjectionTable *table)
        : lex_(text), manifest_(m), table_(table) {
    }

    Formula parse_all() {
        Formula f = parse_imp();
        if (!lex_.at_end()) {
            lex_.fail("unexpected '" + lex_.peek().text + "' after formula");
        }
        return f;
    }

   private:
    Formula parse_imp() {
        Formula lhs = parse_or();
        if (lex_.accept("->")) {
            return fm::imp(lhs, parse_imp());
        }
        return lhs;
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        while (lex_.accept("\\/")) {
            lhs = fm::disj(lhs, parse_and());
        }
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_star();
        while (lex_.accept("/\\")) {
            lhs = fm::conj(lhs, parse_star());
        }
        return lhs;
    }

    Formula parse_star() {
        Formula lhs = parse_atom();
        while (lex_.accept("*")) {
            lhs = fm::star(lhs, parse_atom());
        }
        return lhs;
    }

    std::vector<std::string> id_list() {
        std::vector<std::string> out;
        lex_.expect("[");
        if (lex_.accept("]")) {
            return out;
        }
        out.push_back(lex_.expect_ident());
        while (lex_.accept(",")) {
            out.push_back(lex_.expect_ident());
        }
        lex_.expect("]");
        return out;
    }

    RegSet reg(const std::vector<std::string> &names, const Token &at) {
        RegSet r;
        for (const auto &n : names) {
            if (r.contains(n)) {
                lex_.fail_at(at, "repeated variable " + n);
            }
            r.insert(n, manifest_.var_dim(n));
        }
        return r;
    }

    Formula parse_atom() {
        Token t = lex_.peek();
        if (lex_.accept("(")) {
            Formula f = parse_imp();
            lex_.expect(")");
            return f;
        }
        if (t.kind != TokKind::Ident) {
            lex_.fail_at(t, "expected a formula");
        }
        if (t.text == "top") {
            lex_.next();
            return fm::top();
        }
        if (t.text == "bot") {
            lex_.next();
            return fm::bot();
        }
        if (t.text == "D" || t.text == "U") {
            lex_.next();
            RegSet s = reg(id_list(), t);
            return t.text == "D" ? fm::D(s) : fm::U(s);
        }
        if (t.text == "proj") {
            lex_.next();
            Token nt = lex_.peek();
            std::string name = lex_.raw_word();
            lex_.expect("on");
            auto names = id_list();
            reg(names, nt);
            std::vector<int> dims;
            for (const auto &n : names) {
                dims.push_back(manifest_.var_dim(n));
            }
            if (table_) {
                if (auto it = table_->find(name); it != table_->end()) {
                    if (it->second.first != dims) {
                        throw DomainError("projection " + name + " does not fit the register");
                    }
                    return fm::proj(Projection::from_listed(names, dims, it->second.second, name));
                }
            }
            try {
                return fm::proj(Projection::from_matrix(names, dims, manifest_.projector(name, dims), name));
            } catch (const StructuralError &e) {
                lex_.fail_at(nt, e.what());
            }
        }
        lex_.fail_at(t, "expected a formula but found '" + t.text + "'");
    }

    Lexer lex_;
    const Manifest &manifest_;
    const ProjectionTable *table_;
};

}  // namespace

Formula parse_formula(const std::string &text, const Manifest &manifest, const ProjectionTable *table) {
    return FormulaParser(text, manifest, table).parse_all();
}

}  // namespace qsl
