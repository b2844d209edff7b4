#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "primroot/modarith.hpp"

namespace primroot {

struct Factor {
  u64 q = 0;
  unsigned e = 0;

  friend bool operator==(const Factor&, const Factor&) = default;
};

// A prime p >= 3 together with the complete factorization of p-1.
// q_list holds the distinct prime divisors q_1 = 2 < q_2 < ... < q_omega.
struct PrimeRecord {
  u64 p = 0;
  std::vector<Factor> factors;
  std::vector<u64> q_list;

  std::size_t omega() const { return q_list.size(); }
};

struct SieveConfig {
  u64 max_span = 1'000'000'000;   // hi - lo budget for one call
  std::size_t segment_size = 1 << 18;
};

// Deterministic Miller-Rabin, exact for all n < 2^64.
bool is_prime(u64 n);

// Primes in [lo, hi], ascending. Segments are sieved in parallel and merged
// in order, so the result does not depend on the thread count.
std::vector<u64> primes_in_range(u64 lo, u64 hi, int threads = 0,
                                 const SieveConfig& config = {});

// Single-threaded reference used by the equivalence tests and benchmarks.
std::vector<u64> primes_in_range_serial(u64 lo, u64 hi, const SieveConfig& config = {});

// Prime factorization of n >= 1 in ascending order of q. Trial division by
// small primes, then Brent's rho with a fixed seed sequence.
std::vector<Factor> factorize(u64 n);

// Throws not_prime when p is not a prime >= 3.
PrimeRecord factorize_shifted(u64 p);

// Builds a record from an already known factorization of p-1.
PrimeRecord make_record(u64 p, std::vector<Factor> factors);

// Small primes below limit (simple sieve), cached for limit <= 2^20.
const std::vector<std::uint32_t>& small_primes();

}  // namespace primroot
