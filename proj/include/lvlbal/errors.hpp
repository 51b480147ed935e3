#pragma once

#include <stdexcept>
#include <string>

namespace lvlbal {

// Invalid configuration values (weights, budgets, probabilities).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// API misuse: stepping a finished match, stepping an env before reset.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed text input (labels, dataset lines, renders, observations).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Files that cannot be opened, sockets that cannot connect.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A peer spoke the line protocol incorrectly.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lvlbal
