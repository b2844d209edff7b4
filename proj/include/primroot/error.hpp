#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace primroot {

enum class ErrorKind {
  invalid_argument,
  range_too_large,
  not_prime,
  q_not_divisor,
  n_out_of_range,
  empty_set,
  too_many_primes,
  too_many_divisors,
  hypothesis_violation,
  r_out_of_range,
  delta_out_of_range,
  delta_nonpositive,
  budget_exceeded,
  no_trials,
  internal,
};

const char* to_string(ErrorKind kind) noexcept;

// Every module reports failures through this type; the CLI maps it to exit 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the combiner when a base fails hypothesis (a) or (b).
class HypothesisError : public Error {
 public:
  HypothesisError(std::size_t stage, std::uint64_t q, const std::string& what)
      : Error(ErrorKind::hypothesis_violation, what), stage_(stage), q_(q) {}

  std::size_t stage() const noexcept { return stage_; }
  std::uint64_t q() const noexcept { return q_; }

 private:
  std::size_t stage_;
  std::uint64_t q_;
};

}  // namespace primroot
