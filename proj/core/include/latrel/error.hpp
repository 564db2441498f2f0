#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace latrel {

// Raised for inputs that violate a documented precondition or invariant.
// `field` names the offending parameter when one can be identified.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& message, std::string field = {},
                           std::optional<std::size_t> index = std::nullopt)
      : std::invalid_argument(message), field_(std::move(field)), index_(index) {}

  const std::string& field() const noexcept { return field_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  std::string field_;
  std::optional<std::size_t> index_;
};

// Inputs are individually valid but jointly admit no solution (negative
// probabilities or rates, inconsistent linear systems).
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& message, std::string constraint)
      : std::runtime_error(message), constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

}  // namespace latrel
