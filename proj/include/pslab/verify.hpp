#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pslab/lsets.hpp"
#include "pslab/rational.hpp"
#include "pslab/report.hpp"

namespace pslab {

struct PrimitiveMax {
  CheckedSet set;
  double value = 0.0;
  std::uint64_t nodes = 0;  // search nodes or subsets visited
};

// Primitive subset of [2, N] with the largest f, 4 <= N <= 24. Branch and
// bound over 2..N in order (decreasing f), bounded by the f-mass of the
// unblocked remainder. Near ties (1e-14 relative) go to the lexicographically
// smallest set.
PrimitiveMax exhaustive_primitive_max(unsigned N);
// Every subset, no pruning, same tie rule. 4 <= N <= 20.
PrimitiveMax brute_force_primitive_max(unsigned N);

struct ChainLink {
  std::uint64_t b = 0;            // d_{j+1} / d_j
  std::uint64_t small_prime = 0;  // p(b), 0 when b = 1
  std::uint64_t big_prime = 0;    // P(d_j)
};

struct ChainResult {
  std::vector<std::uint64_t> elements;
  std::vector<ChainLink> certificates;  // one per consecutive pair
};

// Longest chain d_1 < d_2 < ... in A with each term an L-multiple of the one
// before; among longest chains, the lexicographically smallest.
ChainResult longest_l_chain(std::span<const std::uint64_t> set);
// Rechecks every link by factorizing b and d_j afresh.
bool validate_chain(const ChainResult& chain, std::string* why = nullptr);

struct DensityEstimate {
  std::string descriptor;
  std::uint64_t x = 0;
  std::uint64_t count = 0;
  double nat = 0.0;       // |S cap [1,x]| / x
  double log_d = 0.0;     // sum_{n <= x} 1/n / log x
  double loglog_d = 0.0;  // sum_{1 < n <= x} 1/(n log n) / log log x
  // For S = L_A: sum over <A> of exact densities.
  std::optional<Rational> exact;
};

// S = L_A for finite generators A. x >= 16.
DensityEstimate density_estimate_lset(std::span<const std::uint64_t> generators, std::uint64_t x);
// S given explicitly.
DensityEstimate density_estimate_set(std::span<const std::uint64_t> set, std::uint64_t x);

// sum of d(L_n) over y-smooth n with Omega(n) = k, exactly: n = q m with
// q = P(n) gives sum_{q <= y} d(L_q) h_{k-1}(1/p : p <= q), h the complete
// homogeneous symmetric polynomial.
Rational sum_dln_smooth(unsigned k, std::uint64_t y);

inline constexpr const char* kGeneratorVersion = "pslab-gen-1";

const std::vector<std::string>& suite_names();
// cases = 0 picks the suite's default size. Throws DomainError listing the
// valid names for an unknown suite.
VerificationReport run_suite(const std::string& name, std::uint64_t seed = 1, std::uint64_t cases = 0,
                             unsigned threads = 1);

// The published four-digit tables the suites reproduce.
struct TableRow {
  std::uint64_t q;
  double value;
};
const std::vector<TableRow>& published_mu_table();
const std::vector<TableRow>& published_bq_table();
// Half a unit in the fourth significant digit of `published`.
double four_digit_tolerance(double published);

}  // namespace pslab
