#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "primroot/error.hpp"
#include "primroot/factor_block.hpp"

using namespace primroot;

TEST(FactorBlock, MatchesFactorize) {
  const FactorBlock block(1, 100000);
  for (u64 n = 1; n <= 100000; ++n) ASSERT_EQ(block.factors(n), factorize(n)) << n;
}

TEST(FactorBlock, HighOffsetBlock) {
  const u64 lo = (u64{1} << 39), hi = lo + 5000;
  const FactorBlock block(lo, hi);
  for (u64 n = lo; n <= hi; ++n) ASSERT_EQ(block.factors(n), factorize(n)) << n;
}

TEST(FactorBlock, RejectsBadRanges) {
  EXPECT_THROW(FactorBlock(0, 10), Error);
  EXPECT_THROW(FactorBlock(10, 5), Error);
  EXPECT_THROW(FactorBlock(1, FactorBlock::kMaxHi + 1), Error);
}

TEST(ForEachPrimeRecord, VisitsPrimesInOrder) {
  std::vector<u64> seen;
  for_each_prime_record(1, 3000, [&](const PrimeRecord& r) {
    seen.push_back(r.p);
    EXPECT_EQ(r.q_list, oracle::prime_divisors(r.p - 1));
  });
  EXPECT_EQ(seen, oracle::primes_upto(3, 3000));
}

TEST(FoldPrimeRecords, ParallelMatchesSerial) {
  using Acc = std::map<std::size_t, u64>;  // omega -> count
  auto visit = [](Acc& a, const PrimeRecord& r) { ++a[r.omega()]; };
  auto merge = [](Acc& t, const Acc& part) {
    for (auto [k, v] : part) t[k] += v;
  };
  const Acc serial = fold_prime_records_serial(1, 2'000'000, Acc{}, visit);
  for (int threads : {1, 4, 8}) EXPECT_EQ(fold_prime_records(1, 2'000'000, Acc{}, visit, merge, threads), serial);
}

TEST(MapPrimeRecords, OrderedAcrossThreadCounts) {
  auto fn = [](const PrimeRecord& r) { return r.p; };
  const auto one = map_prime_records<u64>(100, 500'000, fn, 1);
  const auto many = map_prime_records<u64>(100, 500'000, fn, 8);
  EXPECT_EQ(one, many);
  EXPECT_EQ(one, primes_in_range(100, 500'000));
}
