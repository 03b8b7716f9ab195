#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace torext {

// Bad input: malformed text, incompatible polyhedra, failed preconditions.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed; this is a bug, not bad input.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : ValidationError(msg + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw InvariantError(msg);
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace torext
