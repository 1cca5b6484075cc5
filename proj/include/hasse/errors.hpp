#pragma once

#include <stdexcept>
#include <string>

namespace hasse {

// Bad input: the caller asked for something outside an operation's domain.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A computed result contradicts a proven identity or bound.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

class NotFoundWithinBound : public std::runtime_error {
 public:
  explicit NotFoundWithinBound(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hasse
