#pragma once

#include <stdexcept>
#include <string>

namespace fractarc {

/// Raised when a construction would exceed its configured generation budget.
/// Cantor interval counts double per generation, so the cap is a hard error.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, int requested, int budget)
      : std::runtime_error(what + " (requested " + std::to_string(requested) +
                           ", budget " + std::to_string(budget) + ")"),
        requested_(requested),
        budget_(budget) {}

  int requested() const noexcept { return requested_; }
  int budget() const noexcept { return budget_; }

 private:
  int requested_;
  int budget_;
};

/// Raised when no connector in the clearance schedule passes the exact
/// disjointness tests. Carries the pair of cells that could not be joined.
class RoutingFailed : public std::runtime_error {
 public:
  RoutingFailed(const std::string& what, std::size_t source_rank, std::size_t target_rank)
      : std::runtime_error(what), source_rank_(source_rank), target_rank_(target_rank) {}

  std::size_t source_rank() const noexcept { return source_rank_; }
  std::size_t target_rank() const noexcept { return target_rank_; }

 private:
  std::size_t source_rank_;
  std::size_t target_rank_;
};

/// A sample could not be decided at the available resolution (deepen and retry).
class InsufficientDepth : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fractarc
