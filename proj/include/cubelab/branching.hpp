#pragma once

#include <cstdint>

#include "cubelab/cube.hpp"

namespace cubelab {

/// Survival probability of a branching process, from the largest fixed point
/// of the generating-function equation. residual is |f(gamma) - gamma| at the
/// returned value; subcritical cases return exactly 0 with residual 0.
struct SurvivalResult {
  double gamma;
  double residual;
};

/// Po(c) offspring: largest root of gamma = 1 - exp(-c * gamma).
/// Zero for c <= 1. Bisection, residual <= 1e-12. Requires c >= 0.
SurvivalResult poisson_survival(double c);

/// Bin(d, p) offspring: largest root of q = 1 - (1 - p q)^d.
/// Zero for d*p <= 1. Requires 0 <= p <= 1.
SurvivalResult binomial_survival(uint32_t d, double p);

/// A concentration estimate for Bin(N, p). `bound` is a tail-probability
/// upper bound, clamped to [0, 2] (anything above 1 is vacuous anyway; the
/// two-sided form already tops out at 2).
struct TailBound {
  uint64_t trials;
  double p;
  double deviation;  // the a or b the bound was evaluated at
  double bound;
};

/// Two-sided bound: P(|X - Np| > a) < 2 exp(-a^2 / (4 N p)).
/// Valid for 0 < a <= Np/2; out-of-range a is a domain error.
TailBound chernoff_upper(uint64_t n_trials, double p, double a);

/// Multiplicative bound: P(X > b Np) <= (e/b)^(b Np), for b > 0.
TailBound chernoff_factor(uint64_t n_trials, double p, double b);

/// Bounds on the number of s-cycles in a percolated hypercube:
/// expectation_bound = 2 n d^(s-2) p^s bounds E[X_s]; host_count_bound =
/// 2^d (s d / 2)^(s/2) bounds the number of s-cycles in Q^d itself.
/// Requires s >= 3.
struct CycleExpectation {
  double expectation_bound;
  double host_count_bound;
};

CycleExpectation expected_short_cycles(Dimension dim, double p, uint32_t s);

}  // namespace cubelab
