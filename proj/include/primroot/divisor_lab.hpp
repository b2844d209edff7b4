#pragma once

#include <optional>
#include <span>
#include <vector>

#include "primroot/prime_engine.hpp"

namespace primroot {

// Divisors d_1 < ... < d_t of n with d_{i+1}/d_i > x^(1/t^c).
struct DivisorChain {
  u64 n = 0;
  double x = 0.0;
  unsigned t = 0;
  double c = 0.0;
  double threshold = 0.0;
  std::vector<u64> chain;
};

struct ExceptionScan {
  u64 x = 0;
  unsigned t = 0;
  double c = 0.0;
  double delta = 0.0;
  u64 exceptions = 0;
  double fraction = 0.0;
  double paper_comparison = 0.0;  // t^(-delta^2/210)
};

// Divisors of n ascending. Throws too_many_divisors above max_count.
std::vector<u64> divisors(u64 n, std::size_t max_count = 1'000'000);
std::vector<u64> divisors_from_factors(std::span<const Factor> factors);

// Strict ratio test in log space: log b - log a > log_threshold, with ties
// inside a relative band of 1e-12 counted as not greater.
bool ratio_exceeds(double log_a, double log_b, double log_threshold);

// Greedy well-spaced chain over ascending divisors starting at d = 1. The
// greedy chain has maximum length among all well-spaced subsets.
std::vector<u64> greedy_chain(std::span<const u64> sorted_divisors, double log_threshold);

std::optional<DivisorChain> well_spaced_chain(u64 n, double x, unsigned t, double c);

// Counts n <= x without t well-spaced divisors at threshold x^(1/t^c).
// Throws delta_nonpositive when c <= 1/log 2.
ExceptionScan exception_scan(u64 x, unsigned t, double c, int threads = 0);
ExceptionScan exception_scan_serial(u64 x, unsigned t, double c);

// Ordered pairs of distinct divisors (d', d'') with |log(d'/d'')| <= sigma.
u64 wstar(u64 b, double sigma);

}  // namespace primroot
