#pragma once

#include <optional>
#include <vector>

#include "primroot/combiner.hpp"
#include "primroot/prime_engine.hpp"

namespace primroot {

// k-fold iterated natural logarithm: iterated_log(x, 2) = log log x.
double iterated_log(double x, unsigned k);

// Throws delta_out_of_range unless 0 < delta < e^-e.
void validate_delta(double delta);

// logloglog(1/delta).
double eta_of(double delta);

struct ConditionI {
  double sum = 0.0;
  bool holds = false;
};

struct ConditionII {
  std::optional<unsigned> r_found;
  unsigned r_max = 0;          // floor(log(1/delta) / 3)
  std::vector<double> tails;   // tail sum at r = 1..(r_found or r_max)
  double tail_at_r = 0.0;      // tail at r_found, else at the last r tried
};

struct ConditionReport {
  u64 p = 0;
  std::size_t omega = 0;
  double delta = 0.0;
  double xi = 0.0;
  double eta = 0.0;
  double sum_i = 0.0;
  bool cond_i = false;
  std::optional<unsigned> r_found;
  double tail_at_r = 0.0;
  bool cond_ii = false;
  bool in_S = false;
  u64 g = 0;
  double bound = 0.0;
  bool holds = false;
};

struct VerifyResult {
  u64 g = 0;
  double bound = 0.0;                 // p^(1/4 - delta)
  bool holds = false;
  std::optional<unsigned> r_found;
  std::optional<double> alpha;        // alpha(p, r_found) under configured constants
};

// sum_{j <= min(floor(log 1/delta), omega)} 1/q_j <= xi * eta.
ConditionI condition_i(const PrimeRecord& record, double delta, double xi);

// Smallest r in [1, floor(log(1/delta)/3)] with
// sum_{j>r} j^3 loglog q_j / log q_j <= exp(-r - sqrt(r eta)).
ConditionII condition_ii(const PrimeRecord& record, double delta);

// Exact g(p) against p^(1/4 - delta); p < 2^32.
VerifyResult verify_bound(const PrimeRecord& record, double delta, const BoundConfig& config);

ConditionReport condition_report(const PrimeRecord& record, double delta, double xi,
                                 const BoundConfig& config);

struct SumRecipScan {
  u64 x = 0;
  double R = 0.0;
  double xi = 0.0;
  double threshold = 0.0;  // xi loglog R
  u64 primes = 0;
  u64 count = 0;
  double fraction = 0.0;
};

// Primes 3 <= p <= x with sum_{i <= min(R, omega)} 1/q_i >= xi loglog R.
SumRecipScan sum_recip_scan(u64 x, double R, double xi, int threads = 0);
SumRecipScan sum_recip_scan_serial(u64 x, double R, double xi);

struct DensityScan {
  u64 x = 0;
  double delta = 0.0;
  double xi = 0.0;
  u64 primes = 0;        // primes in (sqrt x, x]
  u64 fail_i = 0;
  u64 fail_ii = 0;
  u64 fail_any = 0;
  double combined_fraction = 0.0;
  double asymptotic_bound = 0.0;  // exp(-(loglog(1/delta))^(1/4))
};

DensityScan exceptional_density(u64 x, double delta, double xi, int threads = 0);
DensityScan exceptional_density_serial(u64 x, double delta, double xi);

// Per-prime reports for x_min <= p <= x_max, ascending.
std::vector<ConditionReport> condition_scan(u64 x_min, u64 x_max, double delta, double xi,
                                            const BoundConfig& config, int threads = 0);

}  // namespace primroot
