#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace pslab {

// A truncated series or root. The limit lies in value +- tail_bound under the
// documented tail estimate; tail_bound is +inf when no estimate is known.
struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  std::uint64_t terms_used = 0;
  std::string note;
};

// sum 1/(a log a), ascending, compensated. Elements must be >= 2.
double f_sum(std::span<const std::uint64_t> set);
// sum a^{-t}, ascending, compensated.
double f_t_sum(std::span<const std::uint64_t> set, double t);

// Euler-Maclaurin with N = 50 and 8 Bernoulli corrections. zeta_minus_one
// keeps full relative accuracy for large s.
double zeta_minus_one(double s);
double zeta(double s);

// P(s) = sum_p p^{-s} by Moebius inversion of log zeta(ns); terms stop once
// zeta(ns) - 1 < 1e-30.
SeriesValue prime_zeta(double s);

// g(t) = P(t) - 1 - sqrt(1 - P(2t)); tau is its unique root.
double tau_equation(double t);
// Bisection on [1.01, 2] until |g| < tol.
SeriesValue solve_tau(double tol);

// f over all products of two primes, (P(t)^2 + P(2t)) / 2. Exceeds P(t)
// exactly when t < tau.
double f_t_semiprimes(double t);

// f(primes) = head + remainder, head = sum_{p <= X} 1/(p log p) and
// remainder = int_1^inf (P(t) - sum_{p <= X} p^{-t}) dt.
struct FPrimeSplit {
  std::uint64_t bound = 0;
  std::uint64_t head_terms = 0;
  double head = 0.0;
  double remainder = 0.0;
  double remainder_error = 0.0;  // quadrature estimate plus truncated ends
};

FPrimeSplit f_prime_split(std::uint64_t bound, double tol);

inline constexpr double kFPrimeBestTol = 1e-6;

// Throws DomainError naming kFPrimeBestTol when tol is below it.
SeriesValue f_prime_total(double tol, std::uint64_t bound = 1'000'000);

// f restricted to {n <= bound : Omega(n) = k}. tail_bound is +inf. An empty
// range (bound < 2^k) gives 0 with a note.
SeriesValue f_nk_partial(unsigned k, std::uint64_t bound);

}  // namespace pslab
