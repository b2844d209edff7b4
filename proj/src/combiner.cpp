#include "primroot/combiner.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "primroot/error.hpp"
#include "primroot/residue.hpp"

namespace primroot {

namespace {

bool in_N(u64 n, u64 p, u64 q) { return !is_residue_for_cofactor(n % p, p, (p - 1) / q); }

double log_u(u64 n) { return std::log(static_cast<double>(n)); }

}  // namespace

std::vector<NonresidueGroup> group_by_least_nonresidue(const PrimeRecord& record) {
  std::vector<NonresidueGroup> groups;
  for (u64 q : record.q_list) {
    const u64 t = least_q_nonresidue(record.p, q);
    auto it = std::find_if(groups.begin(), groups.end(), [t](const auto& g) { return g.s == t; });
    if (it == groups.end())
      groups.push_back({t, {q}});
    else
      it->primes.push_back(q);
  }
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.s > b.s; });
  return groups;
}

CombineResult combine(u64 p, std::span<const std::vector<u64>> Q_sets, std::span<const u64> bases,
                      const JacobsthalConfig& jconfig) {
  if (Q_sets.empty() || Q_sets.size() != bases.size())
    throw Error(ErrorKind::invalid_argument, "Q_sets and bases must be nonempty and of equal length");
  std::vector<u64> seen;
  for (const auto& Q : Q_sets)
    for (u64 q : Q) {
      if (p < 3 || q < 2 || (p - 1) % q != 0 || !is_prime(q))
        throw Error(ErrorKind::q_not_divisor, fmt::format("{} is not a prime divisor of {} - 1", q, p));
      if (std::find(seen.begin(), seen.end(), q) != seen.end())
        throw Error(ErrorKind::invalid_argument, fmt::format("prime {} appears in two Q sets", q));
      seen.push_back(q);
    }
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i] % p == 0)
      throw Error(ErrorKind::invalid_argument, fmt::format("base n_{} = {} is 0 mod p", i, bases[i]));
    for (u64 q : Q_sets[i])
      if (!in_N(bases[i], p, q))
        throw HypothesisError(i, q, fmt::format("(a) fails: n_{} = {} is a {}-th power residue", i, bases[i], q));
    for (std::size_t j = 0; j < i; ++j)
      for (u64 q : Q_sets[j])
        if (in_N(bases[i], p, q))
          throw HypothesisError(i, q, fmt::format("(b) fails: n_{} = {} is a {}-th power nonresidue", i, bases[i], q));
  }

  CombineResult out;
  u64 running = bases[0] % p;
  out.log_size = log_u(bases[0]);
  for (std::size_t i = 1; i < bases.size(); ++i) {
    u64 modulus = 1;
    for (u64 q : Q_sets[i]) modulus *= q;
    const u64 J = jacobsthal(modulus, jconfig).J;
    const u64 n = bases[i] % p;
    u64 candidate = running;
    std::optional<u64> found;
    for (u64 a = 0; a < J; ++a, candidate = mulmod(candidate, n, p)) {
      if (std::all_of(Q_sets[i].begin(), Q_sets[i].end(), [&](u64 q) { return in_N(candidate, p, q); })) {
        found = a;
        break;
      }
    }
    if (!found)
      throw Error(ErrorKind::internal, fmt::format("no exponent below J({}) = {} at stage {}", modulus, J, i));
    running = candidate;
    // Stage invariant: the running product is a nonresidue for all of Q_0..Q_i.
    for (std::size_t j = 0; j <= i; ++j)
      for (u64 q : Q_sets[j])
        if (!in_N(running, p, q))
          throw Error(ErrorKind::internal, fmt::format("stage {} lost nonresidue property for q = {}", i, q));
    out.exponents.push_back(*found);
    out.log_size += static_cast<double>(*found) * log_u(bases[i]);
  }
  out.residue = running;
  return out;
}

ChainPlan build_chain(const PrimeRecord& record, unsigned r, const JacobsthalConfig& jconfig) {
  const std::size_t omega = record.omega();
  if (r < 1 || r > omega)
    throw Error(ErrorKind::r_out_of_range, fmt::format("r = {} outside [1, {}]", r, omega));
  const u64 p = record.p;
  ChainPlan plan;
  plan.p = p;
  plan.r = r;
  plan.groups = group_by_least_nonresidue(record);

  if (r == omega) {
    plan.degenerate = true;
    plan.h = plan.groups.size();
    plan.Q_sets.push_back(record.q_list);
    plan.bases.push_back(*least_simultaneous_nonresidue(p, record.q_list));
  } else {
    std::size_t cumulative = 0;
    plan.h = 0;
    while (true) {
      cumulative += plan.groups[plan.h].primes.size();
      if (r < cumulative) break;
      ++plan.h;
    }
    std::vector<u64> Q0;
    for (std::size_t i = 0; i < plan.h; ++i)
      Q0.insert(Q0.end(), plan.groups[i].primes.begin(), plan.groups[i].primes.end());
    std::sort(Q0.begin(), Q0.end());
    plan.bases.push_back(Q0.empty() ? 1 : *least_simultaneous_nonresidue(p, Q0));
    plan.Q_sets.push_back(std::move(Q0));
    for (std::size_t i = plan.h; i < plan.groups.size(); ++i) {
      plan.Q_sets.push_back(plan.groups[i].primes);
      plan.bases.push_back(plan.groups[i].s);
    }
  }

  for (const auto& Q : plan.Q_sets) {
    u64 m = 1;
    for (u64 q : Q) m *= q;
    plan.moduli.push_back(m);
  }
  for (std::size_t i = 1; i < plan.moduli.size(); ++i)
    plan.jacobsthal_values.push_back(jacobsthal(plan.moduli[i], jconfig).J);

  const auto result = combine(p, plan.Q_sets, plan.bases, jconfig);
  plan.exponents = result.exponents;
  plan.combined_residue = result.residue;
  plan.log_size = result.log_size;
  plan.log_upper_bound = log_u(plan.bases[0]);
  for (std::size_t i = 1; i < plan.bases.size(); ++i)
    plan.log_upper_bound += static_cast<double>(plan.jacobsthal_values[i - 1] - 1) * log_u(plan.bases[i]);

  if (!is_primitive_root(plan.combined_residue, record))
    throw Error(ErrorKind::internal,
                fmt::format("chain residue {} is not a primitive root of {}", plan.combined_residue, p));
  return plan;
}

double phi_ratio(std::span<const u64> q_list, unsigned r) {
  double phi = 1.0;
  for (std::size_t i = 0; i < r && i < q_list.size(); ++i) {
    const double q = static_cast<double>(q_list[i]);
    phi *= q / (q - 1.0);
  }
  return phi;
}

double tail_sum(std::span<const u64> q_list, unsigned r) {
  double sum = 0.0;
  for (std::size_t j = r + 1; j <= q_list.size(); ++j) {
    const double lq = std::log(static_cast<double>(q_list[j - 1]));
    const double jd = static_cast<double>(j);
    sum += jd * jd * jd * std::log(lq) / lq;
  }
  return sum;
}

double beta_bound(unsigned r, double phi, double c_Cp) {
  const double rd = r;
  return std::exp(-rd - c_Cp * std::sqrt(rd * std::max(1.0, std::log(phi))));
}

double alpha_bound(const PrimeRecord& record, unsigned r, const BoundConfig& config) {
  if (r < 1 || r > record.omega())
    throw Error(ErrorKind::r_out_of_range, fmt::format("r = {} outside [1, {}]", r, record.omega()));
  const double beta = beta_bound(r, phi_ratio(record.q_list, r), config.constants.c_Cp);
  const double lp = std::log(static_cast<double>(record.p));
  const double head = std::sqrt(std::log(2.0 * r)) / std::sqrt(lp);
  return beta - config.constants.c_Cpp * (head + tail_sum(record.q_list, r));
}

BoundConfig evaluate_bounds(const PrimeRecord& record, unsigned r, BoundConfig config) {
  config.r = r;
  config.phi = phi_ratio(record.q_list, r);
  config.beta = beta_bound(r, config.phi, config.constants.c_Cp);
  config.alpha = alpha_bound(record, r, config);
  return config;
}

double theta_estimate(const ChainPlan& plan, const BoundConfig& config) {
  const double beta = beta_bound(plan.r, config.phi, config.constants.c_Cp);
  double bracket = std::sqrt(std::log(2.0 * plan.r) / std::log(static_cast<double>(plan.p)));
  double logM = std::log(static_cast<double>(plan.moduli[0]));
  for (std::size_t i = 1; i < plan.moduli.size(); ++i) {
    logM += std::log(static_cast<double>(plan.moduli[i]));
    const double w = static_cast<double>(plan.Q_sets[i].size());
    if (logM > 1.0) bracket += w * w * w * std::log(logM) / logM;
  }
  return 0.25 - beta + config.constants.c_Cpp * bracket;
}

double reduction_threshold(std::span<const u64> Q) {
  double t = std::ldexp(1.0, static_cast<int>(Q.size()));
  for (u64 q : Q)
    if (q > 2) t *= static_cast<double>(q) / static_cast<double>(q - 1);
  return t;
}

std::optional<ReductionPair> reduction_pair(u64 p, std::span<const u64> Q, u64 n,
                                            std::span<const u64> chain) {
  if (Q.empty()) throw Error(ErrorKind::empty_set, "prime set Q is empty");
  for (u64 q : Q)
    if (p < 3 || q < 2 || (p - 1) % q != 0)
      throw Error(ErrorKind::q_not_divisor, fmt::format("{} does not divide {} - 1", q, p));
  if (!is_simultaneous_nonresidue(n, p, Q))
    throw Error(ErrorKind::invalid_argument, fmt::format("n = {} is not a simultaneous nonresidue", n));
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i] == 0 || n % chain[i] != 0)
      throw Error(ErrorKind::invalid_argument, fmt::format("d = {} does not divide n = {}", chain[i], n));
    if (i > 0 && chain[i] <= chain[i - 1])
      throw Error(ErrorKind::invalid_argument, "divisor chain is not strictly increasing");
  }
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      const u64 reduced = n / chain[j] * chain[i];
      if (is_simultaneous_nonresidue(reduced, p, Q)) return ReductionPair{i, j, reduced};
    }
  return std::nullopt;
}

}  // namespace primroot
