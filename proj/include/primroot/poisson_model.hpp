#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "primroot/prime_engine.hpp"

namespace primroot {

struct PoissonStats {
  unsigned j = 0;
  double t_j = 0.0;
  double t_j1 = 0.0;
  double lambda_j = 0.0;
  u64 x = 0;
  std::vector<u64> histogram;  // histogram[k] = #{p <= x : W_j = k}
  u64 sample_size = 0;
  double mean = 0.0;
  double tv_distance = 0.0;
};

struct LambdaConfig {
  // Largest admissible upper endpoint t_{j+1}; t_3 ~ 5.3e8 fits.
  double max_upper = 6.0e8;
};

enum class TailSide { lower, upper };

// t_j = exp(e^j).
long double interval_endpoint(unsigned j);

// sum over primes t_j < q <= t_{j+1} of 1/(q-1).
double lambda_j(unsigned j, const LambdaConfig& config = {}, int threads = 0);

// Distinct prime factors of n in (a, b].
unsigned omega_interval(u64 n, double a, double b);

// Histogram of W_j = omega(p-1, t_j, t_{j+1}) over all primes p <= x.
PoissonStats empirical_Wj(unsigned j, u64 x, const LambdaConfig& config = {}, int threads = 0);
PoissonStats empirical_Wj_serial(unsigned j, u64 x, const LambdaConfig& config = {});

double poisson_pmf(double lambda, std::int64_t k);
double poisson_cdf(double lambda, std::int64_t k);

// lower: P(Y <= lambda - alpha sqrt(lambda)); upper: P(Y >= lambda + alpha sqrt(lambda)).
double poisson_tail(double lambda, double alpha, TailSide side);

// Half the L1 distance between two mass functions on {0, 1, ...}.
double tv_distance(std::span<const double> a, std::span<const double> b);

// Against Poisson(lambda), including the Poisson mass beyond the histogram.
double tv_distance_poisson(std::span<const u64> histogram, double lambda);

struct LilResult {
  double eta = 0.0;
  double epsilon = 0.0;
  u64 trials = 0;
  u64 seed = 0;
  unsigned K1 = 0;
  unsigned K2 = 0;
  unsigned D = 0;
  unsigned j_max = 0;
  u64 count_A = 0;
  u64 count_B = 0;
  u64 count_AB = 0;
  double estimate = 0.0;     // P(A and B)
  double stderr_ = 0.0;
  double estimate_A = 0.0;
  double estimate_B = 0.0;
  double truncation_mass = 0.0;        // bound on the ignored part of B
  double truncation_mass_log10 = 0.0;
};

// Monte-Carlo frequency of the events A and B in the pure unit-Poisson
// model. Trials are split into fixed seed substreams so the result is
// bit-identical for any thread count.
LilResult simulate_lil(double eta, double epsilon, u64 trials, u64 seed, int threads = 0,
                       unsigned j_max = 200);

}  // namespace primroot
