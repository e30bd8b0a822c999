/*
 * Copyright (c) 2026, The gcaverify Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GCAVERIFY_SRC_LEXER_HPP_
#define GCAVERIFY_SRC_LEXER_HPP_

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "gcaverify/errors.hpp"
#include "gcaverify/expr.hpp"

namespace gcaverify::detail {

enum class Tok {
  kEnd,
  kNumber,
  kIdent,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kEq,
  kLt,
  kLe,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t pos = 0;
};

// Hand-rolled scanner shared by the expression and formula parsers.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  bool accept(Tok kind) {
    if (current_.kind != kind) return false;
    advance();
    return true;
  }

  Token expect(Tok kind, const char* what) {
    if (current_.kind != kind) {
      throw SyntaxError(std::string("expected ") + what + ", found '" +
                            (current_.kind == Tok::kEnd ? "end of input" : current_.text) + "'",
                        current_.pos);
    }
    return take();
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    current_ = Token{};
    current_.pos = pos_;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    auto single = [&](Tok k) {
      current_.kind = k;
      current_.text = std::string(1, c);
      ++pos_;
    };
    auto multi = [&](Tok k, std::size_t len) {
      current_.kind = k;
      current_.text = std::string(text_.substr(pos_, len));
      pos_ += len;
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      current_.kind = Tok::kNumber;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '.')) {
        ++pos_;
      }
      current_.kind = Tok::kIdent;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    std::string_view rest = text_.substr(pos_);
    if (rest.starts_with("<->")) return multi(Tok::kIff, 3);
    if (rest.starts_with("->")) return multi(Tok::kImplies, 2);
    if (rest.starts_with("<=")) return multi(Tok::kLe, 2);
    if (rest.starts_with("&&")) return multi(Tok::kAnd, 2);
    if (rest.starts_with("||")) return multi(Tok::kOr, 2);
    if (rest.starts_with("==")) return multi(Tok::kEq, 2);
    switch (c) {
      case '+': return single(Tok::kPlus);
      case '-': return single(Tok::kMinus);
      case '*': return single(Tok::kStar);
      case '/': return single(Tok::kSlash);
      case '(': return single(Tok::kLParen);
      case ')': return single(Tok::kRParen);
      case '[': return single(Tok::kLBracket);
      case ']': return single(Tok::kRBracket);
      case ',': return single(Tok::kComma);
      case '=': return single(Tok::kEq);
      case '<': return single(Tok::kLt);
      case '!': return single(Tok::kNot);
      case '&': return single(Tok::kAnd);
      case '|': return single(Tok::kOr);
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

// Parses one arithmetic expression starting at the current token and stops at
// the first token that cannot continue it.
Expr parse_expr_prefix(Lexer& lex);

}  // namespace gcaverify::detail

#endif  // GCAVERIFY_SRC_LEXER_HPP_
