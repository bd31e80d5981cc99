#pragma once

#include <stdexcept>
#include <string>

namespace eberlein {

/// Bad argument or configuration detected before any computation starts.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A measure is not known on a region the computation needs to read.
class SupportError : public std::domain_error {
 public:
  explicit SupportError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace eberlein
