#include "primroot/conditions.hpp"

#include <cmath>
#include <numbers>
#include <fmt/format.h>

#include "primroot/error.hpp"
#include "primroot/factor_block.hpp"
#include "primroot/residue.hpp"

namespace primroot {

namespace {

constexpr u64 kVerifyBudget = u64{1} << 32;  // single prime: g(p) is found quickly
constexpr u64 kScanBudget = 1'000'000'000;
constexpr u64 kDensityBudget = 100'000'000;

u64 isqrt_floor(u64 x) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

double sum_recip(const PrimeRecord& record, std::size_t terms) {
  double s = 0.0;
  for (std::size_t j = 0; j < terms && j < record.q_list.size(); ++j) s += 1.0 / static_cast<double>(record.q_list[j]);
  return s;
}

void validate_sum_recip(double R, double xi) {
  if (!(R > 1.0)) throw Error(ErrorKind::invalid_argument, "R must exceed 1");
  if (!(xi > 0.0)) throw Error(ErrorKind::invalid_argument, "xi must be positive");
}

void visit_sum_recip(SumRecipScan& s, const PrimeRecord& rec) {
  ++s.primes;
  if (sum_recip(rec, static_cast<std::size_t>(std::floor(s.R))) >= s.threshold) ++s.count;
}

void visit_density(DensityScan& s, const PrimeRecord& rec) {
  const bool ok_i = condition_i(rec, s.delta, s.xi).holds;
  const bool ok_ii = condition_ii(rec, s.delta).r_found.has_value();
  ++s.primes;
  s.fail_i += !ok_i;
  s.fail_ii += !ok_ii;
  s.fail_any += !(ok_i && ok_ii);
}

void merge_density(DensityScan& total, const DensityScan& part) {
  total.primes += part.primes;
  total.fail_i += part.fail_i;
  total.fail_ii += part.fail_ii;
  total.fail_any += part.fail_any;
}

DensityScan density_header(u64 x, double delta, double xi) {
  validate_delta(delta);
  if (!(xi > 0.0)) throw Error(ErrorKind::invalid_argument, "xi must be positive");
  if (x > kDensityBudget) throw Error(ErrorKind::budget_exceeded, fmt::format("x = {} exceeds {}", x, kDensityBudget));
  DensityScan s;
  s.x = x;
  s.delta = delta;
  s.xi = xi;
  s.asymptotic_bound = std::exp(-std::pow(iterated_log(1.0 / delta, 2), 0.25));
  return s;
}

}  // namespace

double iterated_log(double x, unsigned k) {
  for (unsigned i = 0; i < k; ++i) x = std::log(x);
  return x;
}

void validate_delta(double delta) {
  if (!(delta > 0.0) || !(delta < std::exp(-std::numbers::e)))
    throw Error(ErrorKind::delta_out_of_range, fmt::format("delta = {} outside (0, e^-e)", delta));
}

double eta_of(double delta) { return iterated_log(1.0 / delta, 3); }

ConditionI condition_i(const PrimeRecord& record, double delta, double xi) {
  validate_delta(delta);
  const double terms = std::floor(std::log(1.0 / delta));
  ConditionI out;
  out.sum = sum_recip(record, static_cast<std::size_t>(terms));
  out.holds = out.sum <= xi * eta_of(delta);
  return out;
}

ConditionII condition_ii(const PrimeRecord& record, double delta) {
  validate_delta(delta);
  const double eta = eta_of(delta);
  ConditionII out;
  out.r_max = static_cast<unsigned>(std::floor(std::log(1.0 / delta) / 3.0));
  for (unsigned r = 1; r <= out.r_max; ++r) {
    const double tail = tail_sum(record.q_list, r);
    out.tails.push_back(tail);
    out.tail_at_r = tail;
    if (tail <= std::exp(-static_cast<double>(r) - std::sqrt(r * eta))) {
      out.r_found = r;
      break;
    }
  }
  return out;
}

VerifyResult verify_bound(const PrimeRecord& record, double delta, const BoundConfig& config) {
  if (record.p > kVerifyBudget)
    throw Error(ErrorKind::budget_exceeded, fmt::format("p = {} exceeds {}", record.p, kVerifyBudget));
  validate_delta(delta);
  VerifyResult out;
  out.g = least_primitive_root(record);
  out.bound = std::pow(static_cast<double>(record.p), 0.25 - delta);
  out.holds = static_cast<double>(out.g) <= out.bound;
  out.r_found = condition_ii(record, delta).r_found;
  if (out.r_found) out.alpha = alpha_bound(record, *out.r_found, config);
  return out;
}

ConditionReport condition_report(const PrimeRecord& record, double delta, double xi,
                                 const BoundConfig& config) {
  ConditionReport rep;
  rep.p = record.p;
  rep.omega = record.omega();
  rep.delta = delta;
  rep.xi = xi;
  rep.eta = eta_of(delta);
  const auto ci = condition_i(record, delta, xi);
  rep.sum_i = ci.sum;
  rep.cond_i = ci.holds;
  const auto cii = condition_ii(record, delta);
  rep.r_found = cii.r_found;
  rep.tail_at_r = cii.tail_at_r;
  rep.cond_ii = cii.r_found.has_value();
  rep.in_S = rep.cond_i && rep.cond_ii;
  const auto v = verify_bound(record, delta, config);
  rep.g = v.g;
  rep.bound = v.bound;
  rep.holds = v.holds;
  return rep;
}

SumRecipScan sum_recip_scan_serial(u64 x, double R, double xi) {
  validate_sum_recip(R, xi);
  SumRecipScan s{x, R, xi, xi * iterated_log(R, 2), 0, 0, 0.0};
  s = fold_prime_records_serial(3, x, s, visit_sum_recip);
  s.fraction = s.primes == 0 ? 0.0 : static_cast<double>(s.count) / static_cast<double>(s.primes);
  return s;
}

SumRecipScan sum_recip_scan(u64 x, double R, double xi, int threads) {
  validate_sum_recip(R, xi);
  const SumRecipScan init{x, R, xi, xi * iterated_log(R, 2), 0, 0, 0.0};
  auto s = fold_prime_records(
      3, x, init, visit_sum_recip,
      [](SumRecipScan& total, const SumRecipScan& part) {
        total.primes += part.primes;
        total.count += part.count;
      },
      threads);
  s.fraction = s.primes == 0 ? 0.0 : static_cast<double>(s.count) / static_cast<double>(s.primes);
  return s;
}

DensityScan exceptional_density_serial(u64 x, double delta, double xi) {
  auto s = fold_prime_records_serial(isqrt_floor(x) + 1, x, density_header(x, delta, xi), visit_density);
  s.combined_fraction = s.primes == 0 ? 0.0 : static_cast<double>(s.fail_any) / static_cast<double>(s.primes);
  return s;
}

DensityScan exceptional_density(u64 x, double delta, double xi, int threads) {
  const DensityScan init = density_header(x, delta, xi);
  auto s = fold_prime_records(isqrt_floor(x) + 1, x, init, visit_density, merge_density, threads);
  s.combined_fraction = s.primes == 0 ? 0.0 : static_cast<double>(s.fail_any) / static_cast<double>(s.primes);
  return s;
}

std::vector<ConditionReport> condition_scan(u64 x_min, u64 x_max, double delta, double xi,
                                            const BoundConfig& config, int threads) {
  validate_delta(delta);
  if (x_max > kScanBudget)
    throw Error(ErrorKind::budget_exceeded, fmt::format("x_max = {} exceeds {}", x_max, kScanBudget));
  return map_prime_records<ConditionReport>(
      x_min, x_max, [&](const PrimeRecord& rec) { return condition_report(rec, delta, xi, config); },
      threads);
}

}  // namespace primroot
