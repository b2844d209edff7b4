#pragma once

#include <optional>
#include <span>

#include "primroot/prime_engine.hpp"

namespace primroot {

// J(m): the smallest J such that every J consecutive integers contain one
// coprime to m. For J >= 2, a+1, ..., a+J-1 are all non-coprime to m.
struct JacobsthalValue {
  u64 m = 1;
  u64 J = 1;
  std::optional<u64> witness_start;
};

struct JacobsthalConfig {
  unsigned omega_limit = 8;
  // Radicals up to this size use the period scan; larger ones use the
  // residue-class covering search, which only depends on omega(m).
  u64 scan_limit = 10'000'000;
};

JacobsthalValue jacobsthal(u64 m, const JacobsthalConfig& config = {});

// Direct kernels, exposed for cross-checking. Both take the distinct primes
// of m in ascending order.
JacobsthalValue jacobsthal_period_scan(std::span<const u64> primes);
JacobsthalValue jacobsthal_covering_search(std::span<const u64> primes);

// c * (omega(m) log(omega(m) + 1))^2.
double iwaniec_bound(u64 m, double c);

u64 radical(u64 m);

}  // namespace primroot
