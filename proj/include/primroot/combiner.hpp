#pragma once

#include <optional>
#include <span>
#include <vector>

#include "primroot/jacobsthal.hpp"
#include "primroot/prime_engine.hpp"

namespace primroot {

// All primes q | p-1 sharing the least q-nonresidue s.
struct NonresidueGroup {
  u64 s = 0;
  std::vector<u64> primes;
};

struct CombineResult {
  std::vector<u64> exponents;  // a_1..a_k
  u64 residue = 0;             // n_0 * prod n_i^a_i mod p
  double log_size = 0.0;       // log n_0 + sum a_i log n_i
};

// The construction behind the upper bound g(p) <= n_0 prod n_i^(J(m_i)-1).
// Index 0 of Q_sets/bases/moduli is the initial stage; exponents and
// jacobsthal_values are indexed by stage 1..k (stored from position 0).
struct ChainPlan {
  u64 p = 0;
  unsigned r = 0;
  std::vector<NonresidueGroup> groups;
  std::size_t h = 0;
  bool degenerate = false;
  std::vector<std::vector<u64>> Q_sets;
  std::vector<u64> bases;
  std::vector<u64> moduli;
  std::vector<u64> jacobsthal_values;
  std::vector<u64> exponents;
  u64 combined_residue = 0;
  double log_size = 0.0;
  double log_upper_bound = 0.0;
};

// Stand-ins for the unspecified absolute constants, all 1.0 by default.
struct BoundConstants {
  double c_C = 1.0;
  double c_Cp = 1.0;
  double c_Cpp = 1.0;
  double c_Cppp = 1.0;
};

struct BoundConfig {
  double delta = 0.0;
  double xi = 0.0;
  unsigned r = 1;
  BoundConstants constants;
  double phi = 1.0;
  double beta = 0.0;
  double alpha = 0.0;
};

// Groups sorted by s descending: s_0 > s_1 > ... > s_l.
std::vector<NonresidueGroup> group_by_least_nonresidue(const PrimeRecord& record);

// For each stage i >= 1 picks the smallest a_i in [0, J(m_i)) keeping the
// running product a nonresidue for every q in Q_i. Hypotheses (a) and (b)
// are verified first and reported as HypothesisError.
CombineResult combine(u64 p, std::span<const std::vector<u64>> Q_sets, std::span<const u64> bases,
                      const JacobsthalConfig& jconfig = {});

// r in [1, omega]. r == omega gives the degenerate single-search plan.
ChainPlan build_chain(const PrimeRecord& record, unsigned r, const JacobsthalConfig& jconfig = {});

// prod_{i<=r} q_i / (q_i - 1) over the r smallest primes of the record.
double phi_ratio(std::span<const u64> q_list, unsigned r);

// sum_{j=r+1}^{omega} j^3 loglog q_j / log q_j, with 1-based j.
double tail_sum(std::span<const u64> q_list, unsigned r);

double beta_bound(unsigned r, double phi, double c_Cp);

double alpha_bound(const PrimeRecord& record, unsigned r, const BoundConfig& config);

// Fills phi, beta and alpha for the given r.
BoundConfig evaluate_bounds(const PrimeRecord& record, unsigned r, BoundConfig config);

// 1/4 - beta + C''(sqrt(log 2r / log p) + sum omega(m_i)^3 loglog M_i / log M_i)
// over the plan's stages, M_i = m_0 ... m_i. The O-term is taken with the
// configured constant, so this is a report value, not a certified exponent.
double theta_estimate(const ChainPlan& plan, const BoundConfig& config);

struct ReductionPair {
  std::size_t i = 0;  // 0-based, i < j
  std::size_t j = 0;
  u64 reduced = 0;    // n * d_i / d_j
};

// 2^|Q| prod_{q in Q, q > 2} q / (q - 1).
double reduction_threshold(std::span<const u64> Q);

// Searches pairs i < j in lexicographic order for n d_i / d_j in every N_q.
std::optional<ReductionPair> reduction_pair(u64 p, std::span<const u64> Q, u64 n,
                                            std::span<const u64> chain);

}  // namespace primroot
