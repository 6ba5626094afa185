#pragma once

#include <cmath>

namespace ukk {

/// Inequality checks throughout the library use relative-plus-absolute slack.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

/// a <= b up to kRelTol relative to |b| plus kAbsTol.
inline bool leq_tol(double a, double b, double rel = kRelTol, double abs_tol = kAbsTol) {
  return a <= b + rel * std::fabs(b) + abs_tol;
}

}  // namespace ukk
