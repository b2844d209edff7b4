#include "primroot/factor_block.hpp"

#include <fmt/format.h>

#include "primroot/error.hpp"

namespace primroot {

FactorBlock::FactorBlock(u64 lo, u64 hi) : lo_(lo), hi_(hi) {
  if (lo < 1 || lo > hi || hi > kMaxHi)
    throw Error(ErrorKind::invalid_argument,
                fmt::format("factor block [{}, {}] outside [1, 2^40]", lo, hi));
  const std::size_t len = hi - lo + 1;
  q_.resize(len * kSlots);
  e_.resize(len * kSlots);
  count_.assign(len, 0);
  rest_.resize(len);
  for (std::size_t i = 0; i < len; ++i) rest_[i] = lo + i;

  for (std::uint32_t q : small_primes()) {
    if (static_cast<u64>(q) * q > hi) break;
    for (u64 m = (lo + q - 1) / q * q; m <= hi; m += q) {
      const std::size_t i = m - lo;
      std::uint8_t e = 0;
      do {
        rest_[i] /= q;
        ++e;
      } while (rest_[i] % q == 0);
      const std::size_t slot = i * kSlots + count_[i]++;
      q_[slot] = q;
      e_[slot] = e;
    }
  }
}

std::vector<Factor> FactorBlock::factors(u64 n) const {
  const std::size_t i = n - lo_;
  std::vector<Factor> out;
  out.reserve(count_[i] + 1);
  for (std::size_t k = 0; k < count_[i]; ++k) out.push_back({q_[i * kSlots + k], e_[i * kSlots + k]});
  // Whatever survives the sieve is a single prime above sqrt(hi).
  if (rest_[i] > 1) out.push_back({rest_[i], 1});
  return out;
}

void for_each_prime_record(u64 lo, u64 hi, const std::function<void(const PrimeRecord&)>& visit) {
  lo = std::max<u64>(lo, 3);
  // Chunked so a long serial range never materialises one huge block.
  for (u64 s = lo; s <= hi; s += kScanBlock) {
    const u64 e = (hi - s < kScanBlock) ? hi : s + kScanBlock - 1;
    const auto primes = primes_in_range_serial(s, e);
    if (!primes.empty()) {
      if (e - 1 > FactorBlock::kMaxHi) {
        for (u64 p : primes) visit(make_record(p, factorize(p - 1)));
      } else {
        const FactorBlock block(s - 1, e - 1);
        for (u64 p : primes) visit(make_record(p, block.factors(p - 1)));
      }
    }
    if (e == hi) break;
  }
}

}  // namespace primroot
