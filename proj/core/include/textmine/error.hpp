#pragma once

#include <stdexcept>
#include <string>

namespace textmine {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input files, bad records, format violations. The CLI maps these
// to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace textmine
