#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace qfdiv {

// Value in (-inf, +inf]. Only +inf is representable; arithmetic that would
// produce -inf or inf - inf throws instead of propagating garbage.
class ExtendedReal {
 public:
  ExtendedReal() : value_(0.0), infinite_(false) {}
  ExtendedReal(double v) : value_(v), infinite_(false) {
    if (!std::isfinite(v)) {
      if (v > 0) {
        infinite_ = true;
        value_ = 0.0;
      } else {
        throw std::domain_error("ExtendedReal: non-finite value is not +inf");
      }
    }
  }

  static ExtendedReal infinity() {
    ExtendedReal x;
    x.infinite_ = true;
    return x;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  // Finite value; throws on +inf.
  double value() const {
    if (infinite_) throw std::domain_error("ExtendedReal: value() on +inf");
    return value_;
  }

  // Finite value, or +inf mapped to the IEEE infinity (for comparisons/output).
  double as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  ExtendedReal& operator+=(const ExtendedReal& o) {
    if (o.infinite_) infinite_ = true;
    if (!infinite_) value_ += o.value_;
    return *this;
  }

  friend ExtendedReal operator+(ExtendedReal a, const ExtendedReal& b) {
    a += b;
    return a;
  }

  // Convention 0 * (+inf) = 0. Negative weights on +inf are rejected.
  friend ExtendedReal operator*(double w, const ExtendedReal& x) {
    if (x.infinite_) {
      if (w == 0.0) return ExtendedReal(0.0);
      if (w < 0.0) throw std::domain_error("ExtendedReal: negative weight on +inf");
      return infinity();
    }
    return ExtendedReal(w * x.value_);
  }

  friend ExtendedReal operator-(const ExtendedReal& x) {
    if (x.infinite_) throw std::domain_error("ExtendedReal: negation of +inf");
    return ExtendedReal(-x.value_);
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) {
    return a < b || a == b;
  }

 private:
  double value_;
  bool infinite_;
};

// a <= b + tol*max(1,|b|), with +inf absorbing: any a <= +inf; +inf <= finite is false.
inline bool ext_leq(const ExtendedReal& a, const ExtendedReal& b, double tol) {
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  return a.value() <= b.value() + tol * std::max(1.0, std::abs(b.value()));
}

// Both +inf, or |a-b| <= tol*max(1,|a|,|b|).
inline bool ext_close(const ExtendedReal& a, const ExtendedReal& b, double tol) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  double scale = std::max({1.0, std::abs(a.value()), std::abs(b.value())});
  return std::abs(a.value() - b.value()) <= tol * scale;
}

inline std::string ext_to_string(const ExtendedReal& x) {
  if (x.is_infinite()) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x.value());
  return std::string(buf);
}

}  // namespace qfdiv
