#ifndef BFILAB_ACCUMULATE_HPP
#define BFILAB_ACCUMULATE_HPP

#include <cmath>
#include <cstdint>

namespace bfilab {

// 113-bit accumulator for sums of doubles.
//
// Adding a double of magnitude in [2^-60, 2^40] into a quad accumulator whose
// running total stays below 2^40 is exact (the span 40+60+53 stays within the
// 113-bit significand), so sums built this way are independent of addition
// order and of how work is split across threads. Every tally in this project
// fits those bounds by a wide margin.
using quad = __float128;

// Neumaier-compensated double summation, for the constants module where the
// accumulation order is fixed (increasing p) by contract.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace bfilab

#endif  // BFILAB_ACCUMULATE_HPP
