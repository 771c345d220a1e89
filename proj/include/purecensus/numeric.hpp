#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace purecensus {

// Neumaier-compensated accumulator. Used for every real-valued partial sum
// in the project: 10^8-term harmonic-type sums lose digits under naive
// accumulation.
struct kahan_sum {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }

  double value() const { return s + c; }
};

// Runs fn(0..n_blocks-1), distributing blocks over at most `threads` workers.
// Each block must write only to its own slot; the caller merges slots in
// block order, so results do not depend on the thread count.
void run_blocks(std::size_t n_blocks, unsigned threads,
                const std::function<void(std::size_t)>& fn);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace purecensus
