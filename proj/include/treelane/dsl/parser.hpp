#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "treelane/dsl/ast.hpp"
#include "treelane/dsl/lexer.hpp"
#include "treelane/dsl/parse_error.hpp"

namespace treelane::dsl {

// Recursive-descent parser for the policy language.
//
//   policy   := "policy" STRING "{" node "}"
//   node     := ACTION
//             | "if" expr block ("elif" expr block)* "else" block
//   block    := "{" node "}"
//   expr     := or_expr
//   or_expr  := and_expr ("or" and_expr)*
//   and_expr := not_expr ("and" not_expr)*
//   not_expr := "not" not_expr | comparison
//   cmp      := additive (CMPOP additive)?          -- no chaining
//   additive := mult (("+" | "-") mult)*
//   mult     := unary (("*" | "/") unary)*
//   unary    := "-" unary | primary
//   primary  := NUMBER | "INF" | IDENT
//             | ("min" | "max") "(" expr "," expr ")"
//             | "abs" "(" expr ")"
//             | "(" expr ")"
//
// '#' comments run to end of line.
class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), tokens_(lex(src)) {}

  PolicyTree parse_policy() {
    expect(Tok::PolicyKw);
    Token name = expect(Tok::String);
    expect(Tok::LBrace);
    NodePtr root = parse_node();
    expect(Tok::RBrace);
    expect(Tok::End);
    return PolicyTree{name.text, std::move(root)};
  }

 private:
  const Token& peek() const { return tokens_[idx_]; }

  Token advance() { return tokens_[idx_++]; }

  bool at(Tok kind) const { return peek().kind == kind; }

  bool accept(Tok kind) {
    if (!at(kind)) return false;
    ++idx_;
    return true;
  }

  Token expect(Tok kind) {
    if (!at(kind)) fail({token_name(kind)});
    return advance();
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.pos.line, t.pos.col, "unexpected " + describe(t), std::move(expected),
                     line_text(t.pos.line));
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End: return "end of input";
      case Tok::Number: return "number " + t.text;
      case Tok::String: return "string \"" + t.text + "\"";
      default: return "'" + t.text + "'";
    }
  }

  std::string line_text(int lineno) const {
    int l = 1;
    size_t start = 0;
    for (size_t k = 0; k < src_.size() && l < lineno; ++k) {
      if (src_[k] == '\n') {
        ++l;
        start = k + 1;
      }
    }
    size_t end = src_.find('\n', start);
    if (end == std::string_view::npos) end = src_.size();
    std::string s(src_.substr(start, end - start));
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
  }

  NodePtr parse_node() {
    SourcePos pos = peek().pos;
    if (at(Tok::ActionName)) {
      Token t = advance();
      return make_leaf(t.action, pos);
    }
    if (accept(Tok::IfKw)) {
      std::vector<Arm> arms;
      ExprPtr cond = parse_expr();
      NodePtr child = parse_block();
      arms.push_back(Arm{std::move(cond), std::move(child)});
      while (accept(Tok::ElifKw)) {
        ExprPtr c = parse_expr();
        NodePtr k = parse_block();
        arms.push_back(Arm{std::move(c), std::move(k)});
      }
      if (!accept(Tok::ElseKw)) fail({token_name(Tok::ElifKw), token_name(Tok::ElseKw)});
      NodePtr else_child = parse_block();
      return make_decision(std::move(arms), std::move(else_child), pos);
    }
    fail({"an action (IDLE, SLOWER, FASTER, LANE_LEFT, LANE_RIGHT)", token_name(Tok::IfKw)});
  }

  NodePtr parse_block() {
    expect(Tok::LBrace);
    NodePtr n = parse_node();
    expect(Tok::RBrace);
    return n;
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (at(Tok::OrKw)) {
      SourcePos pos = advance().pos;
      ExprPtr rhs = parse_and();
      lhs = make_binary(BinaryOp::Or, std::move(lhs), std::move(rhs), pos);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_not();
    while (at(Tok::AndKw)) {
      SourcePos pos = advance().pos;
      ExprPtr rhs = parse_not();
      lhs = make_binary(BinaryOp::And, std::move(lhs), std::move(rhs), pos);
    }
    return lhs;
  }

  ExprPtr parse_not() {
    if (at(Tok::NotKw)) {
      SourcePos pos = advance().pos;
      ExprPtr operand = parse_not();
      return make_unary(UnaryOp::Not, std::move(operand), pos);
    }
    return parse_comparison();
  }

  ExprPtr parse_comparison() {
    ExprPtr lhs = parse_additive();
    BinaryOp op;
    switch (peek().kind) {
      case Tok::Lt: op = BinaryOp::Lt; break;
      case Tok::Le: op = BinaryOp::Le; break;
      case Tok::Gt: op = BinaryOp::Gt; break;
      case Tok::Ge: op = BinaryOp::Ge; break;
      case Tok::EqEq: op = BinaryOp::Eq; break;
      case Tok::Ne: op = BinaryOp::Ne; break;
      default: return lhs;
    }
    SourcePos pos = advance().pos;
    ExprPtr rhs = parse_additive();
    return make_binary(op, std::move(lhs), std::move(rhs), pos);
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Token t = advance();
      BinaryOp op = t.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      ExprPtr rhs = parse_multiplicative();
      lhs = make_binary(op, std::move(lhs), std::move(rhs), t.pos);
    }
    return lhs;
  }

  ExprPtr parse_multiplicative() {
    ExprPtr lhs = parse_unary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      Token t = advance();
      BinaryOp op = t.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      ExprPtr rhs = parse_unary();
      lhs = make_binary(op, std::move(lhs), std::move(rhs), t.pos);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (at(Tok::Minus)) {
      SourcePos pos = advance().pos;
      ExprPtr operand = parse_unary();
      return make_unary(UnaryOp::Neg, std::move(operand), pos);
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    SourcePos pos = peek().pos;
    if (at(Tok::Number)) return make_number(advance().number, pos);
    if (accept(Tok::InfKw)) return make_inf(pos);
    if (at(Tok::Ident)) return make_feature(advance().text, pos);
    if (at(Tok::MinKw) || at(Tok::MaxKw)) {
      Callee callee = advance().kind == Tok::MinKw ? Callee::Min : Callee::Max;
      expect(Tok::LParen);
      ExprPtr a = parse_expr();
      expect(Tok::Comma);
      ExprPtr b = parse_expr();
      expect(Tok::RParen);
      std::vector<ExprPtr> args;
      args.push_back(std::move(a));
      args.push_back(std::move(b));
      return make_call(callee, std::move(args), pos);
    }
    if (accept(Tok::AbsKw)) {
      expect(Tok::LParen);
      ExprPtr a = parse_expr();
      expect(Tok::RParen);
      std::vector<ExprPtr> args;
      args.push_back(std::move(a));
      return make_call(Callee::Abs, std::move(args), pos);
    }
    if (accept(Tok::LParen)) {
      ExprPtr e = parse_expr();
      expect(Tok::RParen);
      return e;
    }
    fail({"a number", "'INF'", "a feature name", "'min'", "'max'", "'abs'", "'('"});
  }

  std::string_view src_;
  std::vector<Token> tokens_;
  size_t idx_ = 0;
};

inline PolicyTree parse(std::string_view source) { return Parser(source).parse_policy(); }

inline PolicyTree parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open policy file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace treelane::dsl
