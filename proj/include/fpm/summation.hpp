#pragma once

#include <cmath>

namespace fpm {

// Neumaier's variant of Kahan summation.
template <class Real>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(const Real& init) : sum_(init) {}

  CompensatedSum& operator+=(const Real& x) {
    using std::abs;
    const Real t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  Real value() const { return sum_ + carry_; }

 private:
  Real sum_{0};
  Real carry_{0};
};

}  // namespace fpm
