#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ukk {

/// Two operands live in lattices of different dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : std::invalid_argument("dimension mismatch: " + std::to_string(lhs) +
                              " vs " + std::to_string(rhs)),
        lhs_(lhs),
        rhs_(rhs) {}

  std::size_t lhs() const noexcept { return lhs_; }
  std::size_t rhs() const noexcept { return rhs_; }

 private:
  std::size_t lhs_;
  std::size_t rhs_;
};

/// An argument outside the mathematical domain of an operation
/// (q < 1, p outside [1, inf), c >= 2 for the derived exponent, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact partition enumeration was requested on a support above the threshold.
class SupportTooLarge : public std::length_error {
 public:
  SupportTooLarge(std::size_t support, std::size_t threshold)
      : std::length_error("support size " + std::to_string(support) +
                          " exceeds exact threshold " + std::to_string(threshold) +
                          "; use renorm_heuristic"),
        support_(support),
        threshold_(threshold) {}

  std::size_t support() const noexcept { return support_; }
  std::size_t threshold() const noexcept { return threshold_; }

 private:
  std::size_t support_;
  std::size_t threshold_;
};

/// A generated sequence element left the unit ball of the renormed space.
class UnitBallViolation : public std::runtime_error {
 public:
  UnitBallViolation(std::size_t index, double value)
      : std::runtime_error("sequence element " + std::to_string(index) +
                           " has renorm value " + std::to_string(value) + " > 1"),
        index_(index),
        value_(value) {}

  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t index_;
  double value_;
};

/// Malformed norm spec or experiment config. `field` is a dotted path
/// such as "space.inner[1].q".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ukk
