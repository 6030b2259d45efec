#pragma once

#include <string>
#include <vector>

#include "treelane/errors.hpp"

namespace treelane::dsl {

// Syntax error with position, the set of tokens that would have been
// accepted, and the offending source line for caret rendering.
class ParseError : public Error {
 public:
  ParseError(int line, int col, std::string brief, std::vector<std::string> expected,
             std::string source_line)
      : Error(brief + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
        line_(line),
        col_(col),
        brief_(std::move(brief)),
        expected_(std::move(expected)),
        source_line_(std::move(source_line)) {}

  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }
  const std::string& brief() const noexcept { return brief_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& source_line() const noexcept { return source_line_; }

  // Multi-line rendering with a caret under the offending column. This is
  // the text fed back to the model on a retry, and printed by `check`.
  std::string diagnostic() const {
    std::string out = "error: ";
    out += brief_;
    if (!expected_.empty()) {
      out += "; expected ";
      for (size_t i = 0; i < expected_.size(); ++i) {
        if (i > 0) out += i + 1 == expected_.size() ? " or " : ", ";
        out += expected_[i];
      }
    }
    out += " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")\n";
    out += "  " + source_line_ + "\n";
    out += "  ";
    for (int i = 1; i < col_; ++i) {
      out += (i - 1 < static_cast<int>(source_line_.size()) && source_line_[i - 1] == '\t')
                 ? '\t'
                 : ' ';
    }
    out += "^";
    return out;
  }

 private:
  int line_;
  int col_;
  std::string brief_;
  std::vector<std::string> expected_;
  std::string source_line_;
};

}  // namespace treelane::dsl
