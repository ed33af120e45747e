#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expander {

// Error taxonomy. The CLI maps each class onto an exit code:
// UsageError -> 1, InvalidInput -> 2, ComputationRefused -> 3, anything else -> 4.

/// Bad command-line usage or a malformed family spec string.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data violates a precondition (bad graph, bad file, bad parameter).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed edge-list or label file; carries the 1-based line number.
class FormatError : public InvalidInput {
 public:
  FormatError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A computation was refused because it would exceed a configured budget.
class ComputationRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cayley enumeration exceeded its order cap.
class GroupTooLarge : public ComputationRefused {
 public:
  GroupTooLarge(std::size_t partial_count, std::size_t cap)
      : ComputationRefused("group too large: enumeration reached " +
                           std::to_string(partial_count) + " elements (cap " +
                           std::to_string(cap) + ")"),
        partial_count_(partial_count) {}
  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

/// An iterative solver did not reach its tolerance within the iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace expander
