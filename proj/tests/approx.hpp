#pragma once

#include <algorithm>
#include <cmath>

#include "doctest.h"

namespace nvtest {

// Tolerance comparator: margin() sets an absolute band, epsilon() a relative
// one, and the two add when both are given. Without either, falls back to
// the loose relative default doctest::Approx uses.
class Approx {
 public:
  explicit Approx(double value) : value_(value) {}

  Approx& margin(double m) {
    margin_ = m;
    explicit_tol_ = true;
    return *this;
  }
  Approx& epsilon(double e) {
    epsilon_ = e;
    explicit_tol_ = true;
    return *this;
  }

  double value() const { return value_; }
  double tolerance(double other) const {
    const double rel = explicit_tol_ ? epsilon_ : 1.192092896e-5;
    return margin_ + rel * std::max(std::fabs(other), std::fabs(value_));
  }

 private:
  double value_;
  double margin_ = 0.0;
  double epsilon_ = 0.0;
  bool explicit_tol_ = false;
};

inline bool operator==(double lhs, const Approx& rhs) {
  return std::fabs(lhs - rhs.value()) <= rhs.tolerance(lhs);
}
inline bool operator==(const Approx& lhs, double rhs) { return rhs == lhs; }
inline bool operator!=(double lhs, const Approx& rhs) { return !(lhs == rhs); }
inline bool operator!=(const Approx& lhs, double rhs) { return !(rhs == lhs); }

inline doctest::String toString(const Approx& a) {
  return doctest::String("Approx( ") + doctest::toString(a.value()) + " )";
}

}  // namespace nvtest
