#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treelane/util/strings.hpp"

namespace treelane::agent {

// A fenced block in a model reply:
//   ```tag
//   body...
//   ```
// Prose outside fenced blocks is ignored by every reply parser.
struct FencedBlock {
  std::string tag;
  std::string body;
};

inline std::vector<FencedBlock> extract_blocks(std::string_view reply) {
  std::vector<FencedBlock> out;
  std::vector<std::string> lines = util::split_lines(reply);
  size_t i = 0;
  while (i < lines.size()) {
    std::string_view line = util::trim(lines[i]);
    if (!line.starts_with("```") || line.size() <= 3) {
      ++i;
      continue;
    }
    std::string tag = util::to_lower(util::trim(line.substr(3)));
    std::string body;
    ++i;
    bool closed = false;
    for (; i < lines.size(); ++i) {
      if (util::trim(lines[i]) == "```") {
        closed = true;
        ++i;
        break;
      }
      if (!body.empty()) body += '\n';
      body += lines[i];
    }
    if (closed) out.push_back(FencedBlock{std::move(tag), std::move(body)});
    // an unterminated fence swallows the rest of the reply and yields nothing
  }
  return out;
}

inline std::vector<const FencedBlock*> blocks_tagged(const std::vector<FencedBlock>& blocks,
                                                     std::string_view tag) {
  std::vector<const FencedBlock*> out;
  for (const FencedBlock& b : blocks) {
    if (b.tag == tag) out.push_back(&b);
  }
  return out;
}

inline std::optional<std::string> first_block_tagged(const std::vector<FencedBlock>& blocks,
                                                     std::string_view tag) {
  for (const FencedBlock& b : blocks) {
    if (b.tag == tag) return b.body;
  }
  return std::nullopt;
}

}  // namespace treelane::agent
