#include "primroot/prime_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>

#include "primroot/error.hpp"
#include "primroot/parallel.hpp"

namespace primroot {

namespace {

constexpr std::uint32_t kSmallPrimeLimit = 1u << 20;

// Largest r with r*r <= n.
u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool miller_rabin_round(u64 n, u64 d, unsigned s, u64 a) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of composite n.
u64 rho_factor(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    u64 r = 1;
    constexpr u64 m = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = rho_factor(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

void sieve_segment(u64 lo, u64 hi, const std::vector<std::uint32_t>& base, bool verify,
                   std::vector<u64>& out) {
  std::vector<char> composite(hi - lo + 1, 0);
  for (std::uint32_t q : base) {
    u64 qq = static_cast<u64>(q) * q;
    if (qq > hi) break;
    u64 start = std::max(qq, (lo + q - 1) / q * q);
    for (u64 m = start; m <= hi; m += q) {
      composite[m - lo] = 1;
      if (m > hi - q) break;
    }
  }
  for (u64 n = std::max<u64>(lo, 2);; ++n) {
    if (!composite[n - lo] && (!verify || is_prime(n))) out.push_back(n);
    if (n == hi) break;
  }
}

void check_range(u64 lo, u64 hi, const SieveConfig& config) {
  if (lo > hi) throw Error(ErrorKind::invalid_argument, fmt::format("lo {} > hi {}", lo, hi));
  if (hi - lo > config.max_span)
    throw Error(ErrorKind::range_too_large,
                fmt::format("span {} exceeds segment budget {}", hi - lo, config.max_span));
}

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<char> comp(kSmallPrimeLimit + 1, 0);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kSmallPrimeLimit; ++i) {
      if (comp[i]) continue;
      out.push_back(i);
      for (u64 j = static_cast<u64>(i) * i; j <= kSmallPrimeLimit; j += i) comp[j] = 1;
    }
    return out;
  }();
  return primes;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 a : kWitnesses) {
    if (n == a) return true;
    if (n % a == 0) return false;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kWitnesses)
    if (!miller_rabin_round(n, d, s, a)) return false;
  return true;
}

// Survivors of the small-prime sieve are certified by Miller-Rabin when the
// base primes do not reach sqrt(hi).
std::vector<u64> primes_in_range_serial(u64 lo, u64 hi, const SieveConfig& config) {
  check_range(lo, hi, config);
  std::vector<u64> out;
  if (hi < 2) return out;
  lo = std::max<u64>(lo, 2);
  const auto& base = small_primes();
  const bool verify = isqrt(hi) > kSmallPrimeLimit;
  const u64 seg = config.segment_size;
  for (u64 s = lo;; s += seg) {
    u64 e = (hi - s < seg) ? hi : s + seg - 1;
    sieve_segment(s, e, base, verify, out);
    if (e == hi) break;
  }
  return out;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi, int threads, const SieveConfig& config) {
  check_range(lo, hi, config);
  if (hi < 2) return {};
  lo = std::max<u64>(lo, 2);
  const auto& base = small_primes();
  const bool verify = isqrt(hi) > kSmallPrimeLimit;
  const u64 seg = config.segment_size;
  const u64 nseg = (hi - lo) / seg + 1;
  std::vector<std::vector<u64>> parts(nseg);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(nseg); ++i) {
    u64 s = lo + static_cast<u64>(i) * seg;
    u64 e = (hi - s < seg) ? hi : s + seg - 1;
    sieve_segment(s, e, base, verify, parts[i]);
  }
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  std::vector<u64> out;
  out.reserve(total);
  for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::vector<Factor> factorize(u64 n) {
  if (n == 0) throw Error(ErrorKind::invalid_argument, "factorize(0)");
  std::vector<Factor> out;
  // Trial division up to 2^16 keeps rho away from small factors.
  for (std::uint32_t q : small_primes()) {
    if (q > 65536) break;
    if (static_cast<u64>(q) * q > n) break;
    if (n % q != 0) continue;
    unsigned e = 0;
    do {
      n /= q;
      ++e;
    } while (n % q == 0);
    out.push_back({q, e});
  }
  if (n == 1) return out;
  std::vector<u64> rest;
  factor_rec(n, rest);
  std::sort(rest.begin(), rest.end());
  for (u64 q : rest) {
    if (!out.empty() && out.back().q == q)
      ++out.back().e;
    else
      out.push_back({q, 1});
  }
  return out;
}

PrimeRecord make_record(u64 p, std::vector<Factor> factors) {
  PrimeRecord rec;
  rec.p = p;
  rec.factors = std::move(factors);
  rec.q_list.reserve(rec.factors.size());
  for (const auto& f : rec.factors) rec.q_list.push_back(f.q);
  return rec;
}

PrimeRecord factorize_shifted(u64 p) {
  if (p < 3 || !is_prime(p))
    throw Error(ErrorKind::not_prime, fmt::format("{} is not a prime >= 3", p));
  return make_record(p, factorize(p - 1));
}

}  // namespace primroot
