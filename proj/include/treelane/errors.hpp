#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace treelane {

// Base class for all treelane errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration value. Carries the offending field name.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error("config field '" + field + "': " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// API misuse (e.g. stepping a finished episode).
class UsageError : public Error {
 public:
  using Error::Error;
};

// An agent reply could not be parsed into the required structure after
// the retry budget was spent. `module` is one of planner/coder/summarizer.
class AgentError : public Error {
 public:
  AgentError(std::string module, const std::string& what)
      : Error(module + ": " + what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

}  // namespace treelane
