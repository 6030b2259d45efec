#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "treelane/dsl/ast.hpp"
#include "treelane/dsl/parse_error.hpp"

namespace treelane::dsl {

enum class Tok {
  PolicyKw,
  IfKw,
  ElifKw,
  ElseKw,
  AndKw,
  OrKw,
  NotKw,
  MinKw,
  MaxKw,
  AbsKw,
  InfKw,
  ActionName,  // one of the five action tokens; payload in Token::action
  Ident,
  Number,
  String,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Lt,
  Le,
  Gt,
  Ge,
  EqEq,
  Ne,
  Plus,
  Minus,
  Star,
  Slash,
  End,
};

inline std::string token_name(Tok t) {
  switch (t) {
    case Tok::PolicyKw: return "'policy'";
    case Tok::IfKw: return "'if'";
    case Tok::ElifKw: return "'elif'";
    case Tok::ElseKw: return "'else'";
    case Tok::AndKw: return "'and'";
    case Tok::OrKw: return "'or'";
    case Tok::NotKw: return "'not'";
    case Tok::MinKw: return "'min'";
    case Tok::MaxKw: return "'max'";
    case Tok::AbsKw: return "'abs'";
    case Tok::InfKw: return "'INF'";
    case Tok::ActionName: return "an action";
    case Tok::Ident: return "an identifier";
    case Tok::Number: return "a number";
    case Tok::String: return "a string";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::EqEq: return "'=='";
    case Tok::Ne: return "'!='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier name or unescaped string body
  double number = 0.0;
  Action action = Action::Idle;
  SourcePos pos;
};

// Tokenizes the whole source. Throws ParseError on lexical errors.
inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  size_t i = 0;
  const size_t n = src.size();

  auto current_line = [&](int lineno) {
    // recover the text of `lineno` for diagnostics
    int l = 1;
    size_t start = 0;
    for (size_t k = 0; k < src.size() && l < lineno; ++k) {
      if (src[k] == '\n') {
        ++l;
        start = k + 1;
      }
    }
    size_t end = src.find('\n', start);
    if (end == std::string_view::npos) end = src.size();
    std::string s(src.substr(start, end - start));
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
  };

  auto fail = [&](SourcePos pos, const std::string& msg) -> void {
    throw ParseError(pos.line, pos.col, msg, {}, current_line(pos.line));
  };

  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == '\r' || c == ' ' || c == '\t') {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < n && src[i] != '\n') ++i;
      continue;
    }

    SourcePos pos{line, col};
    auto push = [&](Tok kind, size_t len) {
      Token t;
      t.kind = kind;
      t.pos = pos;
      out.push_back(std::move(t));
      i += len;
      col += static_cast<int>(len);
    };

    switch (c) {
      case '{': push(Tok::LBrace, 1); continue;
      case '}': push(Tok::RBrace, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '+': push(Tok::Plus, 1); continue;
      case '-': push(Tok::Minus, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      case '/': push(Tok::Slash, 1); continue;
      case '<':
        if (i + 1 < n && src[i + 1] == '=') push(Tok::Le, 2);
        else push(Tok::Lt, 1);
        continue;
      case '>':
        if (i + 1 < n && src[i + 1] == '=') push(Tok::Ge, 2);
        else push(Tok::Gt, 1);
        continue;
      case '=':
        if (i + 1 < n && src[i + 1] == '=') push(Tok::EqEq, 2);
        else fail(pos, "stray '='; comparisons use '=='");
        continue;
      case '!':
        if (i + 1 < n && src[i + 1] == '=') push(Tok::Ne, 2);
        else fail(pos, "stray '!'; negation is spelled 'not'");
        continue;
      default: break;
    }

    if (c == '"') {
      std::string body;
      size_t j = i + 1;
      int ccol = col + 1;
      bool closed = false;
      while (j < n) {
        char d = src[j];
        if (d == '"') {
          closed = true;
          ++j;
          ++ccol;
          break;
        }
        if (d == '\n') break;
        if (d == '\\' && j + 1 < n && (src[j + 1] == '"' || src[j + 1] == '\\')) {
          body += src[j + 1];
          j += 2;
          ccol += 2;
          continue;
        }
        body += d;
        ++j;
        ++ccol;
      }
      if (!closed) fail(pos, "unterminated string literal");
      Token t;
      t.kind = Tok::String;
      t.text = std::move(body);
      t.pos = pos;
      out.push_back(std::move(t));
      col = ccol;
      i = j;
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < n && src[j] == '.') {
        ++j;
        while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < n && (src[j] == 'e' || src[j] == 'E')) {
        size_t k = j + 1;
        if (k < n && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < n && std::isdigit(static_cast<unsigned char>(src[k]))) {
          ++k;
          while (k < n && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      std::string text(src.substr(i, j - i));
      char* endp = nullptr;
      double value = std::strtod(text.c_str(), &endp);
      if (endp != text.c_str() + text.size()) fail(pos, "malformed number: " + text);
      Token t;
      t.kind = Tok::Number;
      t.number = value;
      t.text = std::move(text);
      t.pos = pos;
      out.push_back(std::move(t));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string word(src.substr(i, j - i));
      Token t;
      t.pos = pos;
      if (word == "policy") t.kind = Tok::PolicyKw;
      else if (word == "if") t.kind = Tok::IfKw;
      else if (word == "elif") t.kind = Tok::ElifKw;
      else if (word == "else") t.kind = Tok::ElseKw;
      else if (word == "and") t.kind = Tok::AndKw;
      else if (word == "or") t.kind = Tok::OrKw;
      else if (word == "not") t.kind = Tok::NotKw;
      else if (word == "min") t.kind = Tok::MinKw;
      else if (word == "max") t.kind = Tok::MaxKw;
      else if (word == "abs") t.kind = Tok::AbsKw;
      else if (word == "INF") t.kind = Tok::InfKw;
      else if (auto a = action_from_token(word)) {
        t.kind = Tok::ActionName;
        t.action = *a;
      } else {
        t.kind = Tok::Ident;
      }
      t.text = std::move(word);
      out.push_back(std::move(t));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }

    fail(pos, std::string("unexpected character '") + c + "'");
  }

  Token end;
  end.kind = Tok::End;
  end.pos = SourcePos{line, col};
  out.push_back(std::move(end));
  return out;
}

}  // namespace treelane::dsl
