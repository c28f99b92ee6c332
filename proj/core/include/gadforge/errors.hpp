#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gadforge {

// Exit-code taxonomy used by the CLI: 0 ok, 2 usage, 3 data, 4 budget, 5 internal.
enum class ExitCode : int {
  ok = 0,
  usage = 2,
  data = 3,
  budget = 4,
  internal = 5,
};

// Bad flags, unknown commands, out-of-range arguments.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed, inconsistent, or non-finite input data.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when edge construction cannot reach its target within the proposal budget.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, std::int64_t achieved_edges)
      : std::runtime_error(what), achieved_edges(achieved_edges) {}
  std::int64_t achieved_edges;
};

// Raised when a run crosses its configured resident-memory budget.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(const std::string& what, std::int64_t observed_bytes,
                      std::int64_t budget_bytes)
      : std::runtime_error(what),
        observed_bytes(observed_bytes),
        budget_bytes(budget_bytes) {}
  std::int64_t observed_bytes;
  std::int64_t budget_bytes;
};

}  // namespace gadforge
