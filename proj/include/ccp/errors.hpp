#pragma once

#include <stdexcept>
#include <string>

namespace ccp {

// Problems with user input: spec files, term syntax, lattice declarations.
// The CLI maps these to exit code 2.
class LoadError : public std::runtime_error {
 public:
  explicit LoadError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public LoadError {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : LoadError(msg + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class LatticeError : public LoadError {
 public:
  explicit LatticeError(const std::string& msg) : LoadError(msg) {}
};

// State-space exploration exceeded the configured cap. Exit code 3.
class StateCapExceeded : public std::runtime_error {
 public:
  explicit StateCapExceeded(std::size_t cap)
      : std::runtime_error("state cap exceeded (" + std::to_string(cap) +
                           " states); raise --max-states if the instance is genuinely larger"),
        cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

// A redundancy check asked for a derived configuration that is not part of
// the partition's domain. Signals that extend_for_redundancy was skipped.
class MissingDerivedState : public std::logic_error {
 public:
  explicit MissingDerivedState(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ccp
