#include "primroot/poisson_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <fmt/format.h>

#include "primroot/error.hpp"
#include "primroot/factor_block.hpp"
#include "primroot/parallel.hpp"

namespace primroot {

namespace {

constexpr u64 kWjBudget = 100'000'000;
constexpr u64 kLambdaChunk = u64{1} << 22;
constexpr u64 kLilChunk = 4096;

struct IntervalBounds {
  long double t_lo;
  long double t_hi;
  u64 lo;  // q > t_lo  <=>  q > lo
  u64 hi;  // q <= t_hi <=>  q <= hi
};

IntervalBounds interval_bounds(unsigned j, const LambdaConfig& config) {
  if (j < 1) throw Error(ErrorKind::invalid_argument, "j must be >= 1");
  const long double t_hi = interval_endpoint(j + 1);
  if (!(t_hi <= config.max_upper))
    throw Error(ErrorKind::budget_exceeded,
                fmt::format("t_{} = {:.6g} exceeds the desk limit {:.6g}", j + 1,
                            static_cast<double>(t_hi), config.max_upper));
  const long double t_lo = interval_endpoint(j);
  return {t_lo, t_hi, static_cast<u64>(std::floor(t_lo)), static_cast<u64>(std::floor(t_hi))};
}

unsigned count_in(const PrimeRecord& rec, const IntervalBounds& b) {
  unsigned w = 0;
  for (u64 q : rec.q_list) w += (q > b.lo && q <= b.hi);
  return w;
}

void add_to(std::vector<u64>& hist, unsigned k) {
  if (hist.size() <= k) hist.resize(k + 1, 0);
  ++hist[k];
}

void finish_stats(PoissonStats& s) {
  s.sample_size = 0;
  long double weighted = 0.0L;
  for (std::size_t k = 0; k < s.histogram.size(); ++k) {
    s.sample_size += s.histogram[k];
    weighted += static_cast<long double>(k) * s.histogram[k];
  }
  s.mean = s.sample_size == 0 ? 0.0 : static_cast<double>(weighted / s.sample_size);
  s.tv_distance = tv_distance_poisson(s.histogram, s.lambda_j);
}

PoissonStats wj_header(unsigned j, u64 x, const LambdaConfig& config, int threads) {
  if (x > kWjBudget) throw Error(ErrorKind::budget_exceeded, fmt::format("x = {} exceeds {}", x, kWjBudget));
  const auto b = interval_bounds(j, config);
  PoissonStats s;
  s.j = j;
  s.t_j = static_cast<double>(b.t_lo);
  s.t_j1 = static_cast<double>(b.t_hi);
  s.lambda_j = lambda_j(j, config, threads);
  s.x = x;
  // p = 2 has p - 1 = 1 and contributes W_j = 0.
  if (x >= 2) s.histogram.assign(1, 1);
  return s;
}

u64 factorial_capped(unsigned k, u64 cap) {
  u64 f = 1;
  for (unsigned i = 2; i <= k; ++i) {
    f *= i;
    if (f > cap) return cap + 1;
  }
  return f;
}

}  // namespace

long double interval_endpoint(unsigned j) { return std::exp(std::exp(static_cast<long double>(j))); }

double lambda_j(unsigned j, const LambdaConfig& config, int threads) {
  const auto b = interval_bounds(j, config);
  const u64 lo = b.lo + 1;
  const u64 nchunks = (b.hi - lo) / kLambdaChunk + 1;
  std::vector<long double> partial(nchunks, 0.0L);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
    const u64 s = lo + static_cast<u64>(c) * kLambdaChunk;
    const u64 e = std::min(b.hi, s + kLambdaChunk - 1);
    long double sum = 0.0L;
    for (u64 q : primes_in_range_serial(s, e)) sum += 1.0L / static_cast<long double>(q - 1);
    partial[c] = sum;
  }
  long double total = 0.0L;
  for (long double v : partial) total += v;
  return static_cast<double>(total);
}

unsigned omega_interval(u64 n, double a, double b) {
  if (n == 0) throw Error(ErrorKind::invalid_argument, "omega_interval(0)");
  if (!(a < b)) throw Error(ErrorKind::invalid_argument, "omega_interval needs a < b");
  unsigned w = 0;
  for (const auto& f : factorize(n)) {
    const double q = static_cast<double>(f.q);
    w += (q > a && q <= b);
  }
  return w;
}

PoissonStats empirical_Wj(unsigned j, u64 x, const LambdaConfig& config, int threads) {
  PoissonStats s = wj_header(j, x, config, threads);
  const auto b = interval_bounds(j, config);
  const auto hist = fold_prime_records(
      3, x, std::vector<u64>{}, [&](std::vector<u64>& h, const PrimeRecord& rec) { add_to(h, count_in(rec, b)); },
      [](std::vector<u64>& total, const std::vector<u64>& part) {
        if (total.size() < part.size()) total.resize(part.size(), 0);
        for (std::size_t k = 0; k < part.size(); ++k) total[k] += part[k];
      },
      threads);
  if (s.histogram.size() < hist.size()) s.histogram.resize(hist.size(), 0);
  for (std::size_t k = 0; k < hist.size(); ++k) s.histogram[k] += hist[k];
  finish_stats(s);
  return s;
}

PoissonStats empirical_Wj_serial(unsigned j, u64 x, const LambdaConfig& config) {
  PoissonStats s = wj_header(j, x, config, 1);
  const auto b = interval_bounds(j, config);
  s.histogram = fold_prime_records_serial(3, x, s.histogram,
                                          [&](std::vector<u64>& h, const PrimeRecord& rec) { add_to(h, count_in(rec, b)); });
  finish_stats(s);
  return s;
}

double poisson_pmf(double lambda, std::int64_t k) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::invalid_argument, "lambda must be positive");
  if (k < 0) return 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

double poisson_cdf(double lambda, std::int64_t k) {
  double sum = 0.0;
  for (std::int64_t i = 0; i <= k; ++i) sum += poisson_pmf(lambda, i);
  return std::min(sum, 1.0);
}

double poisson_tail(double lambda, double alpha, TailSide side) {
  const double spread = alpha * std::sqrt(lambda);
  if (side == TailSide::lower) {
    const double x = lambda - spread;
    if (x < 0.0) return 0.0;
    return poisson_cdf(lambda, static_cast<std::int64_t>(std::floor(x)));
  }
  const auto kmin = static_cast<std::int64_t>(std::ceil(lambda + spread));
  double sum = 0.0;
  for (std::int64_t k = std::max<std::int64_t>(kmin, 0);; ++k) {
    const double term = poisson_pmf(lambda, k);
    sum += term;
    if (k > lambda && term <= sum * 1e-17) break;
  }
  return sum;
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
  double l1 = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double x = k < a.size() ? a[k] : 0.0;
    const double y = k < b.size() ? b[k] : 0.0;
    l1 += std::abs(x - y);
  }
  return 0.5 * l1;
}

double tv_distance_poisson(std::span<const u64> histogram, double lambda) {
  u64 total = 0;
  for (u64 c : histogram) total += c;
  if (total == 0) return 0.0;
  double l1 = 0.0;
  double covered = 0.0;
  for (std::size_t k = 0; k < histogram.size(); ++k) {
    const double pk = poisson_pmf(lambda, static_cast<std::int64_t>(k));
    covered += pk;
    l1 += std::abs(static_cast<double>(histogram[k]) / static_cast<double>(total) - pk);
  }
  l1 += std::max(0.0, 1.0 - covered);
  return std::min(1.0, 0.5 * l1);
}

LilResult simulate_lil(double eta, double epsilon, u64 trials, u64 seed, int threads, unsigned j_max) {
  if (trials == 0) throw Error(ErrorKind::no_trials, "trials must be positive");
  if (!(eta >= 1.0 && eta <= 3.0)) throw Error(ErrorKind::invalid_argument, "eta must lie in [1, 3]");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error(ErrorKind::invalid_argument, "epsilon must lie in (0, 1]");

  LilResult res;
  res.eta = eta;
  res.epsilon = epsilon;
  res.trials = trials;
  res.seed = seed;
  res.j_max = j_max;
  res.K1 = static_cast<unsigned>(std::floor(std::exp(eta / 2.0)));
  res.K2 = static_cast<unsigned>(std::floor(std::exp((0.5 + epsilon) * eta) / (2.0 * eta)));
  res.D = static_cast<unsigned>(std::floor(eta / 2.0)) + 1;
  const u64 K2_fact = factorial_capped(res.K2, j_max);
  if (K2_fact > j_max)
    throw Error(ErrorKind::budget_exceeded, fmt::format("K2! exceeds the truncation index {}", j_max));
  const u64 K1_fact = factorial_capped(res.K1, j_max);
  const u64 start = std::max<u64>(K1_fact, res.D);  // first unit variable drawn
  res.truncation_mass_log10 = (std::log(2.0) - std::lgamma(j_max + 2.0)) / std::numbers::ln10;
  res.truncation_mass = std::pow(10.0, res.truncation_mass_log10);

  std::vector<u64> block_lo, block_hi;  // [k!, (k+1)!) for k in [K1, K2-1]
  for (unsigned k = res.K1; k + 1 <= res.K2; ++k) {
    block_lo.push_back(factorial_capped(k, j_max));
    block_hi.push_back(factorial_capped(k + 1, j_max));
  }

  const u64 nchunks = (trials + kLilChunk - 1) / kLilChunk;
  std::vector<u64> cA(nchunks, 0), cB(nchunks, 0), cAB(nchunks, 0);
  const double D = res.D;
  const double pre_mean = static_cast<double>(start - res.D);

#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(static_cast<u64>(c) >> 32)};
    std::mt19937_64 rng(seq);
    std::poisson_distribution<long> unit(1.0);
    std::vector<long> y(j_max + 1, 0);
    const u64 first = static_cast<u64>(c) * kLilChunk;
    const u64 last = std::min(trials, first + kLilChunk);
    for (u64 t = first; t < last; ++t) {
      long pre = 0;
      if (pre_mean > 0.0) pre = std::poisson_distribution<long>(pre_mean)(rng);
      bool B = true;
      for (u64 j = start; j <= j_max; ++j) {
        y[j] = unit(rng);
        if (y[j] > static_cast<long>(j)) B = false;
      }
      bool A = false;
      long below = pre;  // Y_{D, k!}, grown block by block
      u64 cursor = start;
      for (std::size_t b = 0; b < block_lo.size(); ++b) {
        for (; cursor < block_lo[b]; ++cursor) below += y[cursor];
        long block = 0;
        for (u64 j = block_lo[b]; j < block_hi[b]; ++j) block += y[j];
        const double kk = static_cast<double>(block_lo[b]);           // k!
        const double width = static_cast<double>(block_hi[b] - block_lo[b]);  // k * k!
        const bool E = block <= width - (1.0 + epsilon / 10.0) * std::sqrt(eta * width);
        const bool F = below <= kk - D + std::exp(eta / 6.0) * std::sqrt(eta * std::max(0.0, kk - D));
        if (E && F) A = true;
      }
      cA[c] += A;
      cB[c] += B;
      cAB[c] += (A && B);
    }
  }
  for (u64 c = 0; c < nchunks; ++c) {
    res.count_A += cA[c];
    res.count_B += cB[c];
    res.count_AB += cAB[c];
  }
  const double n = static_cast<double>(trials);
  res.estimate = res.count_AB / n;
  res.estimate_A = res.count_A / n;
  res.estimate_B = res.count_B / n;
  res.stderr_ = std::sqrt(res.estimate * (1.0 - res.estimate) / n);
  return res;
}

}  // namespace primroot
