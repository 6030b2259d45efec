#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "treelane/errors.hpp"

namespace treelane::agent {

struct ChatMessage {
  std::string role;  // "system" | "user" | "assistant"
  std::string text;
};

// Provider-agnostic chat transport. Implementations may be stateful; the
// replay backend is single-flight and must be used by one loop at a time.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string send(const std::vector<ChatMessage>& messages) = 0;
};

// Serves scripted replies from a fixture directory in filename order
// (lexicographic), one file per send() call. Fully deterministic.
class ReplayChatClient final : public ChatClient {
 public:
  explicit ReplayChatClient(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
      throw ConfigError("fixtures", "not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      std::ifstream in(f);
      std::ostringstream ss;
      ss << in.rdbuf();
      replies_.push_back(ss.str());
      names_.push_back(f.filename().string());
    }
  }

  std::string send(const std::vector<ChatMessage>&) override {
    if (next_ >= replies_.size()) {
      throw AgentError("replay", "fixture replies exhausted after " +
                                     std::to_string(next_) + " calls");
    }
    ++calls_;
    return replies_[next_++];
  }

  int calls() const { return calls_; }
  size_t remaining() const { return replies_.size() - next_; }
  const std::vector<std::string>& fixture_names() const { return names_; }

 private:
  std::vector<std::string> replies_;
  std::vector<std::string> names_;
  size_t next_ = 0;
  int calls_ = 0;
};

// Forwards to another client and captures every reply as a numbered fixture
// file, so a recorded session replays identically through ReplayChatClient.
class RecordingChatClient final : public ChatClient {
 public:
  RecordingChatClient(ChatClient& inner, std::filesystem::path dir)
      : inner_(inner), dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  std::string send(const std::vector<ChatMessage>& messages) override {
    std::string reply = inner_.send(messages);
    char name[32];
    std::snprintf(name, sizeof(name), "%03d_reply.txt", ++seq_);
    std::ofstream out(dir_ / name);
    out << reply;
    return reply;
  }

 private:
  ChatClient& inner_;
  std::filesystem::path dir_;
  int seq_ = 0;
};

// Counts calls; useful in tests wrapping another client.
class CountingChatClient final : public ChatClient {
 public:
  explicit CountingChatClient(ChatClient& inner) : inner_(inner) {}

  std::string send(const std::vector<ChatMessage>& messages) override {
    ++calls_;
    return inner_.send(messages);
  }

  int calls() const { return calls_; }

 private:
  ChatClient& inner_;
  int calls_ = 0;
};

}  // namespace treelane::agent
