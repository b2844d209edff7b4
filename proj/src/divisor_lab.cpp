#include "primroot/divisor_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <fmt/format.h>

#include "primroot/error.hpp"
#include "primroot/factor_block.hpp"
#include "primroot/parallel.hpp"

namespace primroot {

namespace {

constexpr double kGuard = 1e-12;
constexpr u64 kScanBudget = 100'000'000;

double log_threshold(double x, unsigned t, double c) {
  return std::log(x) / std::pow(static_cast<double>(t), c);
}

// Chain length only; the scan kernel avoids materialising the chain.
std::size_t greedy_length(std::span<const u64> divs, double log_thr) {
  std::size_t len = 1;
  double last = 0.0;  // log 1
  for (std::size_t i = 1; i < divs.size(); ++i) {
    const double ld = std::log(static_cast<double>(divs[i]));
    if (ratio_exceeds(last, ld, log_thr)) {
      last = ld;
      ++len;
    }
  }
  return len;
}

void validate_scan(u64 x, unsigned t, double c) {
  if (t < 2) throw Error(ErrorKind::invalid_argument, "t must be >= 2");
  if (x > kScanBudget) throw Error(ErrorKind::budget_exceeded, fmt::format("x = {} exceeds {}", x, kScanBudget));
  if (c - 1.0 / std::numbers::ln2 <= 0.0)
    throw Error(ErrorKind::delta_nonpositive, fmt::format("c = {} is not above 1/log 2", c));
}

ExceptionScan scan_header(u64 x, unsigned t, double c) {
  ExceptionScan s;
  s.x = x;
  s.t = t;
  s.c = c;
  s.delta = c - 1.0 / std::numbers::ln2;
  s.paper_comparison = std::pow(static_cast<double>(t), -s.delta * s.delta / 210.0);
  return s;
}

u64 count_block_exceptions(u64 lo, u64 hi, unsigned t, double log_thr) {
  const FactorBlock block(lo, hi);
  u64 count = 0;
  for (u64 n = lo; n <= hi; ++n) {
    const auto f = block.factors(n);
    std::size_t tau = 1;
    for (const auto& fac : f) tau *= fac.e + 1;
    if (tau < t) {
      ++count;
      continue;
    }
    const auto divs = divisors_from_factors(f);
    if (greedy_length(divs, log_thr) < t) ++count;
  }
  return count;
}

}  // namespace

std::vector<u64> divisors_from_factors(std::span<const Factor> factors) {
  std::vector<u64> divs{1};
  for (const auto& f : factors) {
    const std::size_t base = divs.size();
    u64 pw = 1;
    for (unsigned k = 1; k <= f.e; ++k) {
      pw *= f.q;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<u64> divisors(u64 n, std::size_t max_count) {
  if (n == 0) throw Error(ErrorKind::invalid_argument, "divisors(0)");
  const auto f = factorize(n);
  std::size_t tau = 1;
  for (const auto& fac : f) tau *= fac.e + 1;
  if (tau > max_count)
    throw Error(ErrorKind::too_many_divisors, fmt::format("{} has {} divisors", n, tau));
  return divisors_from_factors(f);
}

bool ratio_exceeds(double log_a, double log_b, double log_threshold) {
  return log_b - log_a > log_threshold + kGuard * std::abs(log_threshold);
}

std::vector<u64> greedy_chain(std::span<const u64> sorted_divisors, double log_thr) {
  std::vector<u64> chain;
  if (sorted_divisors.empty()) return chain;
  chain.push_back(sorted_divisors.front());
  double last = std::log(static_cast<double>(sorted_divisors.front()));
  for (std::size_t i = 1; i < sorted_divisors.size(); ++i) {
    const double ld = std::log(static_cast<double>(sorted_divisors[i]));
    if (ratio_exceeds(last, ld, log_thr)) {
      chain.push_back(sorted_divisors[i]);
      last = ld;
    }
  }
  return chain;
}

std::optional<DivisorChain> well_spaced_chain(u64 n, double x, unsigned t, double c) {
  if (t < 2 || !(x > 1.0) || !(c > 0.0))
    throw Error(ErrorKind::invalid_argument, "well_spaced_chain needs t >= 2, x > 1, c > 0");
  const double log_thr = log_threshold(x, t, c);
  const auto divs = divisors(n);
  auto chain = greedy_chain(divs, log_thr);
  if (chain.size() < t) return std::nullopt;
  chain.resize(t);
  return DivisorChain{n, x, t, c, std::exp(log_thr), std::move(chain)};
}

ExceptionScan exception_scan_serial(u64 x, unsigned t, double c) {
  validate_scan(x, t, c);
  ExceptionScan s = scan_header(x, t, c);
  const double log_thr = log_threshold(static_cast<double>(x), t, c);
  for (u64 lo = 1; lo <= x; lo += kScanBlock)
    s.exceptions += count_block_exceptions(lo, std::min(x, lo + kScanBlock - 1), t, log_thr);
  s.fraction = x == 0 ? 0.0 : static_cast<double>(s.exceptions) / static_cast<double>(x);
  return s;
}

ExceptionScan exception_scan(u64 x, unsigned t, double c, int threads) {
  validate_scan(x, t, c);
  ExceptionScan s = scan_header(x, t, c);
  const double log_thr = log_threshold(static_cast<double>(x), t, c);
  const std::int64_t nblocks = x == 0 ? 0 : static_cast<std::int64_t>((x - 1) / kScanBlock + 1);
  u64 total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total) num_threads(resolve_threads(threads))
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const u64 lo = 1 + static_cast<u64>(b) * kScanBlock;
    total += count_block_exceptions(lo, std::min(x, lo + kScanBlock - 1), t, log_thr);
  }
  s.exceptions = total;
  s.fraction = x == 0 ? 0.0 : static_cast<double>(s.exceptions) / static_cast<double>(x);
  return s;
}

u64 wstar(u64 b, double sigma) {
  if (b == 0 || sigma < 0.0) throw Error(ErrorKind::invalid_argument, "wstar needs b >= 1, sigma >= 0");
  const auto divs = divisors(b);
  std::vector<double> logs(divs.size());
  for (std::size_t i = 0; i < divs.size(); ++i) logs[i] = std::log(static_cast<double>(divs[i]));
  const double bound = sigma * (1.0 + kGuard);
  u64 unordered = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    if (j < i + 1) j = i + 1;
    while (j < logs.size() && logs[j] - logs[i] <= bound) ++j;
    unordered += j - i - 1;
  }
  return 2 * unordered;
}

}  // namespace primroot
