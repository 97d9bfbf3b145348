#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fsample {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

/// Upper tail P[X >= stat] of a chi-square law with `dof` degrees of freedom.
double chi_square_sf(double stat, double dof);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};

/// Goodness of fit of observed counts to cell probabilities. Cells with zero
/// probability must have zero count (otherwise p = 0).
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities);

/// ½ Σ |p_i − q_i|; the shorter vector is padded with zeros.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Counts normalised to a probability vector.
std::vector<double> normalize_counts(std::span<const std::uint64_t> counts);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace fsample
