#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "primroot/prime_engine.hpp"

namespace primroot {

// Least q-th power nonresidue for each q | p-1 and the least primitive root.
struct ResidueProfile {
  u64 p = 0;
  std::map<u64, u64> t_q_map;
  u64 g = 0;
};

// n^((p-1)/q) == 1 (mod p). Throws q_not_divisor / n_out_of_range.
bool is_qth_residue(u64 n, u64 p, u64 q);

// Unchecked kernel: n is a q-th power residue for the given cofactor (p-1)/q.
inline bool is_residue_for_cofactor(u64 n, u64 p, u64 cofactor) {
  return powmod(n, cofactor, p) == 1;
}

// n lies in N_q for every q in qs (reduced mod p; 0 mod p is never a nonresidue).
bool is_simultaneous_nonresidue(u64 n, u64 p, std::span<const u64> qs);

// Generator test against the full set of prime divisors of p-1.
bool is_primitive_root(u64 n, const PrimeRecord& record);

u64 least_q_nonresidue(u64 p, u64 q);

// Minimal n in [2, cap] lying in N_q for every q in qs; nullopt if none.
// cap defaults to p-1.
std::optional<u64> least_simultaneous_nonresidue(u64 p, std::span<const u64> qs,
                                                 std::optional<u64> cap = std::nullopt);

// g(p); g(2) = 1 by convention.
u64 least_primitive_root(u64 p);
u64 least_primitive_root(const PrimeRecord& record);

// |[1, H] intersected with N_q for all q in qs|, by enumeration.
u64 count_simultaneous_nonresidues(u64 p, std::span<const u64> qs, u64 H);

// Lower bound for the count above with c3 standing in for the absolute
// constant in the error term. May be negative.
double burgess_lower_bound(u64 p, std::span<const u64> qs, u64 H, unsigned m, double c3);

// Minimal n >= 2 that is not an M-th power residue modulo p.
u64 least_M_nonresidue(u64 p, u64 M);

ResidueProfile residue_profile(const PrimeRecord& record);

}  // namespace primroot
