#include "vdmlab/log_value.hpp"

#include <algorithm>

namespace vdmlab {

LogValue LogValue::from(Complex v) noexcept {
  const double a = std::abs(v);
  if (a == 0.0) return zero();
  return {std::log(a), v / a};
}

LogValue LogValue::from_log(double log_abs, Complex phase) noexcept {
  if (std::isinf(log_abs) && log_abs < 0) return zero();
  return {log_abs, phase};
}

LogValue LogValue::operator*(const LogValue& o) const noexcept {
  if (is_zero() || o.is_zero()) return zero();
  return {log_abs + o.log_abs, phase * o.phase};
}

LogValue LogValue::pow(double p) const noexcept {
  if (is_zero()) return p == 0.0 ? one() : zero();
  return {p * log_abs, Complex{1.0, 0.0}};
}

double log_gap(const LogValue& a, const LogValue& b) noexcept {
  if (a.is_zero() && b.is_zero()) return 0.0;
  if (a.is_zero() || b.is_zero()) return std::numeric_limits<double>::infinity();
  return std::abs(a.log_abs - b.log_abs);
}

double log_sum_exp(const std::vector<double>& xs) noexcept {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (xs.empty()) return kNegInf;
  const double mx = *std::max_element(xs.begin(), xs.end());
  if (mx == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - mx);
  return mx + std::log(s);
}

}  // namespace vdmlab
