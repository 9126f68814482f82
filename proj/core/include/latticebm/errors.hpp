#pragma once

#include <stdexcept>
#include <string>

namespace latticebm {

// Bad user input or a violated theorem precondition. The CLI maps this to
// exit code 2; the message names the offending hypothesis.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested an exact value that falls outside the radical-sum language
// (e.g. a p-mean whose cleared power does not collapse to a single root).
struct unrepresentable_error : std::domain_error {
  explicit unrepresentable_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace latticebm
