#pragma once

#include <cmath>
#include <limits>

// Log-domain scalar arithmetic. Energies behave like exp(p * O(1)) and are
// meaningless as doubles once p grows past ~100, so every accumulation that
// carries a p-th power stays in log space end to end.
namespace fpl {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)); either argument may be -inf.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-(a > b ? a - b : b - a)));
}

// Streaming log-sum-exp: tracks the running maximum and the sum of
// exponentials rescaled to it. -inf terms are no-ops.
class LogSum {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (empty_) {
      max_ = log_term;
      sum_ = 1.0;
      empty_ = false;
      return;
    }
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }

  bool empty() const { return empty_; }

  double log_total() const {
    return empty_ ? kNegInf : max_ + std::log(sum_);
  }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
  bool empty_ = true;
};

// Nonnegative scalar stored as its natural log; exact zero keeps a flag so
// zero fields round-trip without spurious -inf arithmetic.
struct LogValue {
  double log_value = kNegInf;
  bool is_zero = true;

  static LogValue zero() { return {}; }
  static LogValue from_log(double l) { return {l, false}; }

  double value() const { return is_zero ? 0.0 : std::exp(log_value); }
};

// sign * exp(log_abs); sign == 0 encodes exact zero.
struct SignedLog {
  double log_abs = kNegInf;
  int sign = 0;

  static SignedLog zero() { return {}; }

  static SignedLog of(double x) {
    if (x == 0.0) return {};
    return {std::log(std::fabs(x)), x > 0.0 ? 1 : -1};
  }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

// exp(log_pos) - exp(log_neg) as a SignedLog. Exact ties cancel to zero;
// near ties lose relative precision, which is inherent to the subtraction.
inline SignedLog signed_diff(double log_pos, double log_neg) {
  if (log_pos == kNegInf && log_neg == kNegInf) return SignedLog::zero();
  if (log_neg == kNegInf) return {log_pos, 1};
  if (log_pos == kNegInf) return {log_neg, -1};
  if (log_pos == log_neg) return SignedLog::zero();
  const int sign = log_pos > log_neg ? 1 : -1;
  const double hi = sign > 0 ? log_pos : log_neg;
  const double lo = sign > 0 ? log_neg : log_pos;
  return {hi + std::log1p(-std::exp(lo - hi)), sign};
}

// a - b.
inline SignedLog signed_sub(const SignedLog& a, const SignedLog& b) {
  if (b.sign == 0) return a;
  if (a.sign == 0) return {b.log_abs, -b.sign};
  if (a.sign == b.sign) {
    const SignedLog d = signed_diff(a.log_abs, b.log_abs);
    return {d.log_abs, d.sign * a.sign};
  }
  return {log_add(a.log_abs, b.log_abs), a.sign};
}

}  // namespace fpl
