#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace medil {

// Malformed or out-of-contract input (bad indices, unparsable files, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A solver hit its time or node budget before proving optimality.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t lower_bound,
                 std::size_t upper_bound, std::uint64_t nodes)
      : std::runtime_error(what),
        lower_bound_(lower_bound),
        upper_bound_(upper_bound),
        nodes_(nodes) {}

  // Proven lower bound on the optimum at the time of failure.
  std::size_t lower_bound() const noexcept { return lower_bound_; }
  // Objective value of the best cover found, unproven.
  std::size_t upper_bound() const noexcept { return upper_bound_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::size_t lower_bound_;
  std::size_t upper_bound_;
  std::uint64_t nodes_;
};

// Something that must hold by construction did not.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace medil
