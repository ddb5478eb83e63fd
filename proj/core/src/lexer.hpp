// Copyright 2026 The ttrans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Internal tokenizer shared by the tree parser and the transducer file
// parsers. Names are bare ([A-Za-z0-9_#$'+-]+) or double-quoted; `//` starts
// a line comment.

#ifndef TTRANS_SRC_LEXER_HPP
#define TTRANS_SRC_LEXER_HPP

#include <string>

#include "ttrans/errors.hpp"

namespace ttrans::detail {

inline bool is_bare_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '#' || c == '$' || c == '\'' || c == '+' || c == '-';
}

inline bool is_bare_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_bare_name_char(c)) return false;
  return true;
}

struct Token {
  enum Kind { Name, Punct, End } kind = End;
  std::string text;  // decoded name, or the punctuation character
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, tok_.line, tok_.col);
  }

  /// Consumes a name token and returns its text.
  std::string expect_name(const std::string& what) {
    if (tok_.kind != Token::Name) fail("expected " + what);
    return next().text;
  }

  /// Consumes the given punctuation character.
  void expect(char p) {
    if (tok_.kind != Token::Punct || tok_.text[0] != p)
      fail(std::string("expected '") + p + "'");
    advance();
  }

  bool at(char p) const {
    return tok_.kind == Token::Punct && tok_.text.size() == 1 && tok_.text[0] == p;
  }

  void expect_arrow() {
    if (tok_.kind != Token::Punct || tok_.text != "->") fail("expected '->'");
    advance();
  }

  /// Consumes `p` when it is next; returns whether it was.
  bool accept(char p) {
    if (!at(p)) return false;
    advance();
    return true;
  }

  /// Accepts the exact keyword name `kw`.
  bool accept_keyword(const std::string& kw) {
    if (tok_.kind != Token::Name || tok_.text != kw) return false;
    advance();
    return true;
  }

  bool at_name(const std::string& name) const {
    return tok_.kind == Token::Name && tok_.text == name;
  }

  bool at_end() const { return tok_.kind == Token::End; }

 private:
  void advance() {
    skip_space_and_comments();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_ = Token{Token::End, "", line_, col_};
      return;
    }
    char c = text_[pos_];
    if (c == '"') {
      tok_ = Token{Token::Name, read_quoted(), tok_.line, tok_.col};
      return;
    }
    // '-' is a name character, so the arrow needs a lookahead: "->" is
    // punctuation and a bare name breaks just before it.
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      take();
      take();
      tok_ = Token{Token::Punct, "->", tok_.line, tok_.col};
      return;
    }
    if (is_bare_name_char(c)) {
      std::string name;
      while (pos_ < text_.size() && is_bare_name_char(text_[pos_])) {
        if (text_[pos_] == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') break;
        name += take();
      }
      tok_ = Token{Token::Name, name, tok_.line, tok_.col};
      return;
    }
    take();
    tok_ = Token{Token::Punct, std::string(1, c), tok_.line, tok_.col};
  }

  std::string read_quoted() {
    take();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) throw ParseError("unterminated quoted name", line_, col_);
      char c = take();
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) throw ParseError("dangling escape", line_, col_);
        out += take();
      } else {
        out += c;
      }
    }
    if (out.empty()) throw ParseError("empty quoted name", tok_.line, tok_.col);
    return out;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
      } else {
        break;
      }
    }
  }

  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

}  // namespace ttrans::detail

#endif  // TTRANS_SRC_LEXER_HPP
