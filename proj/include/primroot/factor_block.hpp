#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "primroot/parallel.hpp"
#include "primroot/prime_engine.hpp"

namespace primroot {

// Factorizations of every n in [lo, hi], computed by sieving the block with
// primes up to sqrt(hi). Requires 1 <= lo <= hi <= 2^40.
class FactorBlock {
 public:
  static constexpr u64 kMaxHi = u64{1} << 40;
  // n <= 2^40 has at most 11 distinct prime factors.
  static constexpr std::size_t kSlots = 15;

  FactorBlock(u64 lo, u64 hi);

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  std::vector<Factor> factors(u64 n) const;

 private:
  u64 lo_;
  u64 hi_;
  std::vector<std::uint32_t> q_;
  std::vector<std::uint8_t> e_;
  std::vector<std::uint8_t> count_;
  std::vector<u64> rest_;
};

// Block length used by every prime scan. Fixed so that per-block partial
// results, and therefore merged results, do not depend on the thread count.
inline constexpr u64 kScanBlock = u64{1} << 16;

// Visits every prime 3 <= p in [lo, hi] in ascending order with the
// factorization of p-1 attached.
void for_each_prime_record(u64 lo, u64 hi, const std::function<void(const PrimeRecord&)>& visit);

// Parallel fold over blocks of kScanBlock candidates. Each block folds into
// its own copy of init; the copies are merged in block order.
template <class Acc, class Visit, class Merge>
Acc fold_prime_records(u64 lo, u64 hi, const Acc& init, Visit visit, Merge merge,
                       int threads = 0) {
  Acc total = init;
  if (hi < 3 || lo > hi) return total;
  lo = std::max<u64>(lo, 3);
  const u64 nblocks = (hi - lo) / kScanBlock + 1;
  std::vector<Acc> partial(nblocks, init);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
    const u64 s = lo + static_cast<u64>(b) * kScanBlock;
    const u64 e = (hi - s < kScanBlock) ? hi : s + kScanBlock - 1;
    Acc& acc = partial[b];
    for_each_prime_record(s, e, [&](const PrimeRecord& rec) { visit(acc, rec); });
  }
  for (const Acc& part : partial) merge(total, part);
  return total;
}

// Serial reference: one accumulator, primes in ascending order.
template <class Acc, class Visit>
Acc fold_prime_records_serial(u64 lo, u64 hi, const Acc& init, Visit visit) {
  Acc acc = init;
  if (hi < 3 || lo > hi) return acc;
  for_each_prime_record(std::max<u64>(lo, 3), hi, [&](const PrimeRecord& rec) { visit(acc, rec); });
  return acc;
}

// Per-prime results in ascending order of p.
template <class R, class Fn>
std::vector<R> map_prime_records(u64 lo, u64 hi, Fn fn, int threads = 0) {
  return fold_prime_records(
      lo, hi, std::vector<R>{},
      [&fn](std::vector<R>& acc, const PrimeRecord& rec) { acc.push_back(fn(rec)); },
      [](std::vector<R>& total, const std::vector<R>& part) {
        total.insert(total.end(), part.begin(), part.end());
      },
      threads);
}

}  // namespace primroot
