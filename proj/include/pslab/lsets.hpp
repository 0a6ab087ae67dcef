#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pslab/primes.hpp"
#include "pslab/rational.hpp"

namespace pslab {

// n is an L-multiple of a when n = b a and every prime of b is >= P(a).
bool is_l_multiple(std::uint64_t n, std::uint64_t a);

// Exact densities are kept for P(a) up to this bound.
inline constexpr std::uint64_t kExactDensityPrimeLimit = 10'000;

struct LSetDescriptor {
  std::uint64_t a = 0;
  Factorization fact;
  // (1/a) prod_{p < P(a)} (1 - 1/p); empty when P(a) > kExactDensityPrimeLimit.
  std::optional<Rational> density_exact;
  double density_float = 0.0;
  bool exact() const { return density_exact.has_value(); }
};

LSetDescriptor l_density(std::uint64_t a);
// Throws DomainError beyond the exact range.
Rational l_density_exact(std::uint64_t a);
// prod_{p < bound} (1 - 1/p), exact, for bound <= kExactDensityPrimeLimit + 1.
Rational mertens_product_below(std::uint64_t bound);

enum class Trichotomy { Disjoint, FirstContainsSecond, SecondContainsFirst, Equal };

// FirstContainsSecond: L_b is inside L_a, i.e. b is an L-multiple of a.
Trichotomy trichotomy(std::uint64_t a, std::uint64_t b);
std::string to_string(Trichotomy t);

struct CheckedSet {
  std::vector<std::uint64_t> elements;  // sorted, distinct, >= 2
  bool primitive = false;
  bool l_primitive = false;
};

CheckedSet check_set(std::span<const std::uint64_t> set);

// <S>: the members of S that are not L-multiples of a smaller member.
CheckedSet generating_set(std::span<const std::uint64_t> set);

// Sign of base^exponent - target. Exponents within 1e-15 of a fraction with
// denominator <= 1000 are compared exactly in integers; otherwise in logs,
// with BoundaryAmbiguityError when the two sides are within 1e-12 relative.
int compare_pow(std::uint64_t base, double exponent, std::uint64_t target);

// The window [P(a*), P(a*)^{1/sqrt v}) of the set C_a^v.
struct CSetSpec {
  std::uint64_t a = 0;
  double v = 0.0;
  std::uint64_t window_lo = 0;    // P(a*)
  double window_hi = 0.0;         // P(a*)^{1/sqrt v}, exclusive
  std::vector<std::uint64_t> window_primes;
  // Set when window_primes stops at a caller-supplied cap below window_hi;
  // c_set then refuses bounds above the cap.
  bool truncated = false;
  std::uint64_t prime_cap = 0;
};

// Window ends above this are refused.
inline constexpr double kCSetWindowCap = 1e9;

// a must be composite, 0 < v < 1. With prime_cap set, only window primes up
// to the cap are listed (enough for enumerating c up to that cap).
CSetSpec make_cset_spec(std::uint64_t a, double v, std::uint64_t prime_cap = 0);

// All c <= bound whose primes lie in the window, ascending, starting with 1.
std::vector<std::uint64_t> c_set(const CSetSpec& spec, std::uint64_t bound);

// sum_{c in C_a^v} 1/c = prod_{p in window} p/(p-1), exact. Refuses
// truncated specs.
Rational c_set_harmonic_exact(const CSetSpec& spec);
double c_set_harmonic(const CSetSpec& spec);

// D_v(n): primes p | n with prod_{q^e || n, q < p} q^e <= p^v, ascending.
std::vector<std::uint64_t> d_v_set(std::uint64_t n, double v);
// p * prod_{q^e || n, q < p} q^e for the largest p in D_v(n). Always an
// L-divisor of n.
std::uint64_t beta(std::uint64_t n, double v);

}  // namespace pslab
