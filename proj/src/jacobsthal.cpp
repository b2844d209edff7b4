#include "primroot/jacobsthal.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <fmt/format.h>

#include "primroot/error.hpp"

namespace primroot {

namespace {

struct Cached {
  u64 J;
  std::optional<u64> witness;
};

std::shared_mutex cache_mutex;
std::unordered_map<u64, Cached> cache;

u64 product(std::span<const u64> primes) {
  u64 r = 1;
  for (u64 q : primes) r *= q;
  return r;
}

// Inverse of a modulo m, gcd(a, m) = 1.
u64 inverse_mod(u64 a, u64 m) {
  __int128 t = 0, new_t = 1, r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 quotient = r / new_r;
    __int128 tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

struct CoverSearch {
  std::span<const u64> primes;
  std::size_t limit;                 // positions 1..limit are tracked
  std::vector<unsigned> covered;     // cover multiplicity per position
  std::vector<u64> klass;            // chosen class (a position) per prime, 0 = unused
  std::vector<u64> best_klass;
  u64 best = 0;                      // longest covered run 1..best

  void run(std::size_t used) {
    u64 u = 1;
    while (u <= limit && covered[u] > 0) ++u;
    if (u - 1 > best) {
      best = u - 1;
      best_klass = klass;
    }
    if (used == primes.size() || u > limit) return;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (klass[i] != 0) continue;
      const u64 q = primes[i];
      for (u64 x = u; x <= limit; x += q) ++covered[x];
      klass[i] = u;
      run(used + 1);
      klass[i] = 0;
      for (u64 x = u; x <= limit; x += q) --covered[x];
    }
  }
};

}  // namespace

u64 radical(u64 m) {
  if (m == 0) throw Error(ErrorKind::invalid_argument, "radical(0)");
  u64 r = 1;
  for (const auto& f : factorize(m)) r *= f.q;
  return r;
}

JacobsthalValue jacobsthal_period_scan(std::span<const u64> primes) {
  const u64 rad = product(primes);
  JacobsthalValue v{rad, 1, std::nullopt};
  if (rad == 1) return v;
  std::vector<char> shared(rad + 1, 0);
  for (u64 q : primes)
    for (u64 x = q; x <= rad; x += q) shared[x] = 1;
  // 1 is coprime; the gap after the last coprime value wraps to rad + 1.
  u64 prev = 1;
  for (u64 x = 2; x <= rad + 1; ++x) {
    if (x <= rad && shared[x]) continue;
    if (x - prev > v.J) {
      v.J = x - prev;
      v.witness_start = prev;
    }
    prev = x;
  }
  return v;
}

// J - 1 is the longest run 1..L coverable by one residue class per prime;
// any assignment of classes is realised by some a via CRT. The smallest
// uncovered point must be hit by one of the unused primes, so branching on
// that prime explores every maximal covering. J(m) <= 2^omega bounds L.
JacobsthalValue jacobsthal_covering_search(std::span<const u64> primes) {
  const u64 rad = product(primes);
  JacobsthalValue v{rad, 1, std::nullopt};
  if (primes.empty()) return v;
  CoverSearch search{primes, (std::size_t{1} << primes.size()) + 1, {}, {}, {}, 0};
  search.covered.assign(search.limit + 1, 0);
  search.klass.assign(primes.size(), 0);
  search.run(0);
  v.J = search.best + 1;
  // a + x == 0 (mod q) for x in the class of q, i.e. a == -x (mod q).
  // Unused primes take a == 0. Incremental CRT over the primes in order.
  u64 M = 1;
  u64 a = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const u64 q = primes[i];
    const u64 target = search.best_klass[i] == 0 ? 0 : (q - search.best_klass[i] % q) % q;
    const u64 diff = (target + q - a % q) % q;
    const u64 k = mulmod(diff, inverse_mod(M % q, q), q);
    a += M * k;
    M *= q;
  }
  v.witness_start = a;
  return v;
}

JacobsthalValue jacobsthal(u64 m, const JacobsthalConfig& config) {
  if (m == 0) throw Error(ErrorKind::invalid_argument, "jacobsthal(0)");
  std::vector<u64> primes;
  for (const auto& f : factorize(m)) primes.push_back(f.q);
  if (primes.size() > config.omega_limit)
    throw Error(ErrorKind::too_many_primes,
                fmt::format("omega({}) = {} exceeds limit {}", m, primes.size(), config.omega_limit));
  const u64 rad = product(primes);
  {
    std::shared_lock lock(cache_mutex);
    if (auto it = cache.find(rad); it != cache.end()) return {m, it->second.J, it->second.witness};
  }
  JacobsthalValue v = rad <= config.scan_limit ? jacobsthal_period_scan(primes)
                                               : jacobsthal_covering_search(primes);
  {
    std::unique_lock lock(cache_mutex);
    cache.emplace(rad, Cached{v.J, v.witness_start});
  }
  v.m = m;
  return v;
}

double iwaniec_bound(u64 m, double c) {
  if (m == 0) throw Error(ErrorKind::invalid_argument, "iwaniec_bound(0)");
  const double w = static_cast<double>(m == 1 ? 0 : factorize(m).size());
  const double t = w * std::log(w + 1.0);
  return c * t * t;
}

}  // namespace primroot
