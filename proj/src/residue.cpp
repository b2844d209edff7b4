#include "primroot/residue.hpp"

#include <cmath>
#include <fmt/format.h>

#include "primroot/error.hpp"

namespace primroot {

namespace {

void require_divisor(u64 p, u64 q) {
  if (p < 3 || q < 2 || (p - 1) % q != 0)
    throw Error(ErrorKind::q_not_divisor, fmt::format("{} does not divide {} - 1", q, p));
}

void require_prime_divisors(u64 p, std::span<const u64> qs) {
  for (u64 q : qs) {
    require_divisor(p, q);
    if (!is_prime(q)) throw Error(ErrorKind::invalid_argument, fmt::format("{} is not prime", q));
  }
}

}  // namespace

bool is_qth_residue(u64 n, u64 p, u64 q) {
  require_divisor(p, q);
  if (n < 1 || n > p - 1)
    throw Error(ErrorKind::n_out_of_range, fmt::format("n = {} outside [1, {}]", n, p - 1));
  return is_residue_for_cofactor(n, p, (p - 1) / q);
}

bool is_simultaneous_nonresidue(u64 n, u64 p, std::span<const u64> qs) {
  n %= p;
  if (n == 0) return false;
  for (u64 q : qs)
    if (is_residue_for_cofactor(n, p, (p - 1) / q)) return false;
  return true;
}

bool is_primitive_root(u64 n, const PrimeRecord& record) {
  return is_simultaneous_nonresidue(n, record.p, record.q_list);
}

u64 least_q_nonresidue(u64 p, u64 q) {
  require_divisor(p, q);
  const u64 cof = (p - 1) / q;
  for (u64 n = 2; n < p; ++n)
    if (!is_residue_for_cofactor(n, p, cof)) return n;
  throw Error(ErrorKind::internal, fmt::format("no {}-th power nonresidue mod {}", q, p));
}

std::optional<u64> least_simultaneous_nonresidue(u64 p, std::span<const u64> qs,
                                                 std::optional<u64> cap) {
  if (qs.empty()) throw Error(ErrorKind::empty_set, "prime set Q is empty");
  require_prime_divisors(p, qs);
  const u64 limit = std::min(cap.value_or(p - 1), p - 1);
  for (u64 n = 2; n <= limit; ++n)
    if (is_simultaneous_nonresidue(n, p, qs)) return n;
  return std::nullopt;
}

u64 least_primitive_root(const PrimeRecord& record) {
  for (u64 n = 2; n < record.p; ++n)
    if (is_primitive_root(n, record)) return n;
  throw Error(ErrorKind::internal, fmt::format("no primitive root found mod {}", record.p));
}

u64 least_primitive_root(u64 p) {
  if (p == 2) return 1;
  return least_primitive_root(factorize_shifted(p));
}

u64 count_simultaneous_nonresidues(u64 p, std::span<const u64> qs, u64 H) {
  require_prime_divisors(p, qs);
  if (H > p - 1) throw Error(ErrorKind::n_out_of_range, fmt::format("H = {} exceeds p - 1", H));
  u64 count = 0;
  for (u64 n = 1; n <= H; ++n)
    if (is_simultaneous_nonresidue(n, p, qs)) ++count;
  return count;
}

double burgess_lower_bound(u64 p, std::span<const u64> qs, u64 H, unsigned m, double c3) {
  if (m < 1) throw Error(ErrorKind::invalid_argument, "m must be positive");
  const double h = static_cast<double>(H);
  const double pd = static_cast<double>(p);
  double density = 1.0;
  for (u64 q : qs) density *= 1.0 - 1.0 / static_cast<double>(q);
  const double md = m;
  const double main = h / 8.0 * density;
  const double err = std::pow(5.0 * static_cast<double>(qs.size()), c3) * std::pow(h, 1.0 - 1.0 / md) *
                     std::pow(pd, (md + 1.0) / (4.0 * md * md)) * std::pow(std::log(pd), 1.0 / md);
  return main - err;
}

u64 least_M_nonresidue(u64 p, u64 M) {
  if (M < 2 || p < 3 || (p - 1) % M != 0)
    throw Error(ErrorKind::q_not_divisor, fmt::format("M = {} is not a divisor >= 2 of {} - 1", M, p));
  const u64 cof = (p - 1) / M;
  for (u64 n = 2; n < p; ++n)
    if (!is_residue_for_cofactor(n, p, cof)) return n;
  throw Error(ErrorKind::internal, "no M-th power nonresidue");
}

ResidueProfile residue_profile(const PrimeRecord& record) {
  ResidueProfile profile;
  profile.p = record.p;
  for (u64 q : record.q_list) profile.t_q_map[q] = least_q_nonresidue(record.p, q);
  profile.g = least_primitive_root(record);
  return profile;
}

}  // namespace primroot
