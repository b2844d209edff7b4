#include "primroot/error.hpp"

namespace primroot {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::range_too_large: return "range-too-large";
    case ErrorKind::not_prime: return "not-prime";
    case ErrorKind::q_not_divisor: return "q-not-divisor";
    case ErrorKind::n_out_of_range: return "n-out-of-range";
    case ErrorKind::empty_set: return "empty-Q";
    case ErrorKind::too_many_primes: return "too-many-primes";
    case ErrorKind::too_many_divisors: return "too-many-divisors";
    case ErrorKind::hypothesis_violation: return "hypothesis-violation";
    case ErrorKind::r_out_of_range: return "r-out-of-range";
    case ErrorKind::delta_out_of_range: return "delta-out-of-range";
    case ErrorKind::delta_nonpositive: return "delta-nonpositive";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::no_trials: return "no-trials";
    case ErrorKind::internal: return "internal-error";
  }
  return "unknown";
}

}  // namespace primroot
