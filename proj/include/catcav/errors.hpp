#pragma once

#include <stdexcept>
#include <string>

namespace catcav {

// Invalid physical input (out-of-range parameter, violated precondition).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical operation could not be carried out (singular denominator,
// degenerate normalization, failed fit).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace catcav
