#pragma once

// Live chat backend speaking the OpenAI-compatible /chat/completions shape.
// Kept out of the test suites: tests use the replay backend only.

#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "treelane/agent/chat_client.hpp"
#include "treelane/errors.hpp"

namespace treelane::agent {

class HttpChatClient final : public ChatClient {
 public:
  struct Options {
    std::string base_url;  // e.g. https://api.example.com/v1
    std::string model;
    std::string api_key;
    double timeout_seconds = 120.0;
  };

  // Env vars: TREELANE_LLM_URL, TREELANE_LLM_MODEL, TREELANE_LLM_KEY.
  static Options from_env() {
    Options opts;
    if (const char* v = std::getenv("TREELANE_LLM_URL")) opts.base_url = v;
    if (const char* v = std::getenv("TREELANE_LLM_MODEL")) opts.model = v;
    if (const char* v = std::getenv("TREELANE_LLM_KEY")) opts.api_key = v;
    return opts;
  }

  explicit HttpChatClient(Options opts) : opts_(std::move(opts)) {
    if (opts_.base_url.empty()) throw ConfigError("TREELANE_LLM_URL", "endpoint URL not set");
    if (opts_.model.empty()) throw ConfigError("TREELANE_LLM_MODEL", "model name not set");
    split_url(opts_.base_url, host_part_, path_prefix_);
  }

  std::string send(const std::vector<ChatMessage>& messages) override {
    nlohmann::json body;
    body["model"] = opts_.model;
    body["messages"] = nlohmann::json::array();
    for (const ChatMessage& m : messages) {
      body["messages"].push_back({{"role", m.role}, {"content", m.text}});
    }

    httplib::Client client(host_part_);
    client.set_read_timeout(static_cast<time_t>(opts_.timeout_seconds), 0);
    client.set_connection_timeout(10, 0);
    httplib::Headers headers;
    if (!opts_.api_key.empty()) {
      headers.emplace("Authorization", "Bearer " + opts_.api_key);
    }
    auto res = client.Post(path_prefix_ + "/chat/completions", headers, body.dump(),
                           "application/json");
    if (!res) {
      throw AgentError("http", "request failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw AgentError("http", "status " + std::to_string(res->status) + ": " +
                                   res->body.substr(0, 400));
    }
    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty()) {
      throw AgentError("http", "malformed completion response: " + res->body.substr(0, 400));
    }
    const auto& message = reply["choices"][0]["message"];
    if (!message.contains("content") || !message["content"].is_string()) {
      throw AgentError("http", "completion response has no message content");
    }
    return message["content"].get<std::string>();
  }

 private:
  // "https://host:port/v1" -> ("https://host:port", "/v1")
  static void split_url(const std::string& url, std::string& host, std::string& path) {
    size_t scheme = url.find("://");
    size_t slash = scheme == std::string::npos ? url.find('/')
                                               : url.find('/', scheme + 3);
    if (slash == std::string::npos) {
      host = url;
      path.clear();
    } else {
      host = url.substr(0, slash);
      path = url.substr(slash);
      while (!path.empty() && path.back() == '/') path.pop_back();
    }
  }

  Options opts_;
  std::string host_part_;
  std::string path_prefix_;
};

}  // namespace treelane::agent
