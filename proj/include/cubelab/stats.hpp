#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cubelab {

/// Aggregate of one numeric column. Quantiles are nearest-rank on the sorted
/// values (rank ceil(p*n), so q50 of two values is the lower one); stddev is
/// the sample deviation with n-1 in the denominator, 0 for a single value.
struct Summary {
  double mean = 0;
  double stddev = 0;
  double min = 0;
  double max = 0;
  double q10 = 0, q25 = 0, q50 = 0, q75 = 0, q90 = 0;
};

inline Summary summarize(std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("summarize: no values");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();

  Summary s;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / double(n);
  double sq = 0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = n > 1 ? std::sqrt(sq / double(n - 1)) : 0.0;
  s.min = values.front();
  s.max = values.back();

  auto rank = [&](double p) {
    size_t r = size_t(std::ceil(p * double(n)));
    if (r == 0) r = 1;
    return values[std::min(r, n) - 1];
  };
  s.q10 = rank(0.10);
  s.q25 = rank(0.25);
  s.q50 = rank(0.50);
  s.q75 = rank(0.75);
  s.q90 = rank(0.90);
  return s;
}

}  // namespace cubelab
