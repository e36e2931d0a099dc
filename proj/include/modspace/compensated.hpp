#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

#ifdef __FAST_MATH__
#error "fast-math would defeat compensated summation"
#endif

namespace modspace {

// Neumaier-compensated accumulator. Every norm reduction in the library
// funnels through this in a fixed index order, so reports are bit-stable
// across runs regardless of how callers schedule the per-term work.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double result() const { return sum_ + carry_; }

  private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

class CompensatedComplexSum {
  public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> result() const { return {re_.result(), im_.result()}; }

  private:
    CompensatedSum re_;
    CompensatedSum im_;
};

}  // namespace modspace
