#include "cubelab/branching.hpp"

#include <cmath>
#include <stdexcept>

namespace cubelab {

namespace {

// Largest root of f on [lo, 1] by bisection, where f(lo) > 0 >= f(1) and f
// has a single sign change there (true for both survival equations above the
// critical point). 200 halvings take the bracket far below double precision.
template <typename F>
SurvivalResult bisect_survival(F f, double lo) {
  double hi = 1.0;
  const double f_hi = f(hi);
  if (f_hi >= 0.0) return {1.0, f_hi};  // fixed point sits at the endpoint
  if (f(lo) <= 0.0) return {0.0, 0.0};  // no root above lo: treat as extinct
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  const double gamma = 0.5 * (lo + hi);
  return {gamma, std::fabs(f(gamma))};
}

}  // namespace

SurvivalResult poisson_survival(double c) {
  if (!(c >= 0.0) || std::isinf(c))
    throw std::invalid_argument("poisson_survival: c must be finite and >= 0");
  if (c <= 1.0) return {0.0, 0.0};
  auto f = [c](double g) { return 1.0 - std::exp(-c * g) - g; };
  return bisect_survival(f, 1e-9);
}

SurvivalResult binomial_survival(uint32_t d, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binomial_survival: p must be in [0, 1]");
  if (double(d) * p <= 1.0) return {0.0, 0.0};
  auto f = [d, p](double q) {
    return 1.0 - std::pow(1.0 - p * q, double(d)) - q;
  };
  return bisect_survival(f, 1e-9);
}

TailBound chernoff_upper(uint64_t n_trials, double p, double a) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("chernoff_upper: p must be in (0, 1]");
  const double np = double(n_trials) * p;
  if (!(a > 0.0 && a <= 0.5 * np))
    throw std::invalid_argument(
        "chernoff_upper: deviation must satisfy 0 < a <= Np/2");
  const double bound = 2.0 * std::exp(-a * a / (4.0 * np));
  return TailBound{n_trials, p, a, bound};
}

TailBound chernoff_factor(uint64_t n_trials, double p, double b) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("chernoff_factor: p must be in (0, 1]");
  if (!(b > 0.0))
    throw std::invalid_argument("chernoff_factor: b must be positive");
  const double np = double(n_trials) * p;
  // (e/b)^(b Np), clamped: values above 2 carry no information and the
  // TailBound contract keeps bound in [0, 2].
  const double raw = std::exp(b * np * (1.0 - std::log(b)));
  return TailBound{n_trials, p, b, raw < 2.0 ? raw : 2.0};
}

CycleExpectation expected_short_cycles(Dimension dim, double p, uint32_t s) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("expected_short_cycles: p must be in [0, 1]");
  if (s < 3)
    throw std::invalid_argument("expected_short_cycles: s must be >= 3");
  const double n = double(dim.vertex_count());
  const double d = double(dim.d());
  const double expectation =
      2.0 * n * std::pow(d, double(s) - 2.0) * std::pow(p, double(s));
  const double host = n * std::pow(0.5 * double(s) * d, 0.5 * double(s));
  return CycleExpectation{expectation, host};
}

}  // namespace cubelab
