#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "eisdens/rational.hpp"

namespace eisdens {

// An enumeration would visit more items than the configured budget allows.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, BigInt count, BigInt budget)
      : std::runtime_error(what + ": " + count.get_str() + " items exceed the budget of " + budget.get_str()),
        count_(std::move(count)),
        budget_(std::move(budget)) {}

  const BigInt& count() const { return count_; }
  const BigInt& budget() const { return budget_; }

 private:
  BigInt count_;
  BigInt budget_;
};

// The requested interval width cannot be certified for this spectrum.
// best_width is absent when no bound at all is available.
class UnachievableWidth : public std::domain_error {
 public:
  UnachievableWidth(const std::string& what, std::optional<Rational> best_width)
      : std::domain_error(what), best_width_(std::move(best_width)) {}

  const std::optional<Rational>& best_width() const { return best_width_; }

 private:
  std::optional<Rational> best_width_;
};

}  // namespace eisdens
