#pragma once

#include <stdexcept>
#include <string>

namespace asrfix {

// Malformed input data: bad file rows, invalid config values, unencodable
// words. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke an operation's precondition (bad span, k > n, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace asrfix
