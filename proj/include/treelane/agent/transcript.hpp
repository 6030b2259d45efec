#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "treelane/util/hash.hpp"

namespace treelane::agent {

// One line of the training log: prompts, replies and loop events, tagged
// with the iteration and the module that produced them.
struct TranscriptRecord {
  int iteration = 0;
  std::string module;  // planner | coder | summarizer | loop
  std::string role;    // system | user | assistant | event
  std::string text;
};

class Transcript {
 public:
  void add(int iteration, std::string module, std::string role, std::string text) {
    records_.push_back(
        TranscriptRecord{iteration, std::move(module), std::move(role), std::move(text)});
  }

  const std::vector<TranscriptRecord>& records() const { return records_; }

  std::uint64_t hash() const {
    util::Fnv64 h;
    for (const TranscriptRecord& r : records_) {
      h.update_i64(r.iteration);
      h.update(r.module);
      h.update("\x1f");
      h.update(r.role);
      h.update("\x1f");
      h.update(r.text);
      h.update("\x1e");
    }
    return h.digest();
  }

  void write_jsonl(std::ostream& out) const {
    for (const TranscriptRecord& r : records_) {
      nlohmann::json line{{"iteration", r.iteration},
                          {"module", r.module},
                          {"role", r.role},
                          {"text", r.text}};
      out << line.dump() << '\n';
    }
  }
};

}  // namespace treelane::agent
