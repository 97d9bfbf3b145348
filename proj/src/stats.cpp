#include "fsample/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <boost/math/distributions/chi_squared.hpp>

#include "fsample/error.hpp"

namespace fsample {

double chi_square_sf(double stat, double dof) {
  if (dof <= 0) return 1.0;
  if (stat <= 0) return 1.0;
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities) {
  if (observed.size() != probabilities.size()) {
    throw Error(ErrorCode::invalid_argument, "chi-square: observed and expected sizes differ");
  }
  double n = 0;
  for (auto o : observed) n += static_cast<double>(o);
  ChiSquareResult r;
  if (n == 0) return r;
  CompensatedSum stat;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = n * probabilities[i];
    const auto o = static_cast<double>(observed[i]);
    if (e <= 0) {
      if (o > 0) return {std::numeric_limits<double>::infinity(), 0.0, 0.0};
      continue;
    }
    ++cells;
    stat += (o - e) * (o - e) / e;
  }
  r.statistic = stat.value();
  r.dof = cells > 0 ? static_cast<double>(cells - 1) : 0.0;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  CompensatedSum s;
  const std::size_t n = std::max(p.size(), q.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    s += std::abs(a - b);
  }
  return 0.5 * s.value();
}

std::vector<double> normalize_counts(std::span<const std::uint64_t> counts) {
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  std::vector<double> p(counts.size(), 0.0);
  if (total == 0) return p;
  for (std::size_t i = 0; i < counts.size(); ++i) p[i] = static_cast<double>(counts[i]) / total;
  return p;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace fsample
