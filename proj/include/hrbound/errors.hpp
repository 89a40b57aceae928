#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hrbound {

// Argument and domain violations use std::invalid_argument / std::domain_error
// directly. The types below cover the remaining failure classes.

/// Not enough observations to estimate a model.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation is well-defined but deliberately not provided (e.g. offline
/// optimum for variable object sizes).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Instance exceeds the size limit of an exhaustive oracle.
class InstanceTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid experiment configuration; `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace hrbound
