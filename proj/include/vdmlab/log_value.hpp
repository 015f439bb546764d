#pragma once

#include <cmath>
#include <limits>

#include "vdmlab/types.hpp"

namespace vdmlab {

/// phase * exp(log_abs). Zero is log_abs = -inf with phase 0.
struct LogValue {
  double log_abs = -std::numeric_limits<double>::infinity();
  Complex phase{0.0, 0.0};

  static LogValue zero() noexcept { return {}; }
  static LogValue one() noexcept { return {0.0, Complex{1.0, 0.0}}; }
  static LogValue from(Complex v) noexcept;
  static LogValue from_log(double log_abs, Complex phase = {1.0, 0.0}) noexcept;

  bool is_zero() const noexcept { return std::isinf(log_abs) && log_abs < 0; }
  double abs() const noexcept { return std::exp(log_abs); }
  Complex value() const noexcept { return is_zero() ? Complex{} : phase * std::exp(log_abs); }

  LogValue operator*(const LogValue& o) const noexcept;
  LogValue& operator*=(const LogValue& o) noexcept { return *this = *this * o; }
  LogValue pow(double p) const noexcept;  // |v|^p, phase dropped to 1 for p != integer
};

/// |log|a| - log|b||, treating two zeros as equal.
double log_gap(const LogValue& a, const LogValue& b) noexcept;

/// log(sum exp(x_i)) with max shift; empty or all -inf gives -inf.
double log_sum_exp(const std::vector<double>& xs) noexcept;

}  // namespace vdmlab
