#pragma once

// Error-free floating point accumulation (Shewchuk partials, as in Python's
// math.fsum). The result is the correctly rounded value of the exact sum, so
// contributions that cancel in exact arithmetic give exactly zero.

#include <cmath>
#include <vector>

#include "composite/types.hpp"

namespace composite {

class ExactSum {
 public:
  void add(double x) {
    std::size_t used = 0;
    for (double y : partials_) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[used++] = lo;
      x = hi;
    }
    partials_.resize(used);
    partials_.push_back(x);
  }

  double value() const {
    if (partials_.empty()) return 0.0;
    auto n = partials_.size();
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
      const double x = hi;
      const double y = partials_[--n];
      hi = x + y;
      lo = y - (hi - x);
      if (lo != 0.0) break;
    }
    // Round-half-even correction across the remaining partials.
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
      const double y = lo * 2.0;
      const double x = hi + y;
      if (y == x - hi) hi = x;
    }
    return hi;
  }

 private:
  std::vector<double> partials_;
};

class ExactComplexSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  ExactSum re_;
  ExactSum im_;
};

}  // namespace composite
