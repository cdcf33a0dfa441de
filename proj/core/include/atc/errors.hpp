#pragma once

#include <stdexcept>
#include <string>

namespace atc {

/// Malformed or unreadable input file (edge list, attribute file, truth or
/// query file). Carries the 1-based line number when one applies.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// No (k,d)-truss containing the query nodes exists.
class NoFeasibleCommunity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace atc
