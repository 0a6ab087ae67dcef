#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pslab/lsets.hpp"

namespace pslab {

// b_q = (pi/4) (M_q / m_q^2) mu_q. m_q is the certified infimum m_lower(q),
// M_q the upper envelope; r_q is reported from the envelopes.
struct BqEntry {
  std::uint64_t q = 0;
  double mu_q = 0.0;
  double m_q = 0.0;
  double M_q = 0.0;
  double r_q = 0.0;
  double b_q = 0.0;
};

BqEntry b_value(std::uint64_t q);
// All odd primes up to limit, from one prefix table.
std::vector<BqEntry> b_table(std::uint64_t limit);
// The tabulated primes 3..47.
const std::vector<std::uint64_t>& bq_table_primes();

struct ConstantsReport {
  double M = 0.0;  // 1 + 1/(2 log^2(2e9))
  double C1 = 0.0;
  double C2 = 0.0;
  double inner_sum = 0.0;
  double final_bound = 0.0;  // 2 (C1 + C2)
  double ess_const = 0.0;    // e^gamma pi/4
};

ConstantsReport bound_constants();

// sum c_i d_i <= sum c_i (D_i - D_{i-1}) + 1e-12, with D_0 = 0. Throws
// PreconditionError unless c is non-increasing and >= 0, d >= 0, D is
// non-decreasing and >= 0, and sum_{j <= i} d_j <= D_i (1e-12 slack).
bool mass_lemma_check(std::span<const double> c, std::span<const double> d, std::span<const double> D);

// sum (sqrt v_i - sqrt v_{i-1}) / (1 + v_{i-1}) over 0 = v_0 < ... < v_k = 1.
double pi4_partition_sum(std::span<const double> partition);
double pi4_uniform_sum(std::uint64_t k);

struct InequalityCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

// f(A) <= (e^gamma / m_q) sum_{a in A} d(L_a) / (1 + v), q = P(n). Requires A
// L-primitive, n not in A, and a in L_n with P(a)^{1+v} <= a for every a.
InequalityCheck lemma25_check(const CheckedSet& set, std::uint64_t n, double v);

struct Prop32Check : InequalityCheck {
  // Members <= disjointness_bound shared by two of the sets L_{ac}.
  std::uint64_t collisions = 0;
  std::uint64_t pairs = 0;  // (a, c) pairs searched
  std::string first_collision;
};

inline constexpr std::uint64_t kDisjointnessBound = 1'000'000;

// sum_{a in A cap L_n} d(L_a) <= sqrt(v) r_q d(L_n), q = P(n), exactly on the
// left. Requires A primitive, n not in A, 0 < v < 1, and P(a)^{1+v} > a for
// every a in A cap L_n. Also searches L_{ac} (a in A cap L_n, c in C_a^v) up to
// disjointness_bound for a common member.
Prop32Check prop32_check(const CheckedSet& set, std::uint64_t n, double v,
                         std::uint64_t disjointness_bound = kDisjointnessBound);

// b_q > log q / log 2q. Exact table values for q <= 47; above 47 the envelope
// bound (pi/4) M_q^2 / m_q^2 >= b_q is compared instead.
bool logp2p_check(std::uint64_t q);

// f(2^K) + (2 - 2^{1-K}) C1 + 2 C2, K >= 2; the K = infinity value is
// final_bound_limit() = 2 (C1 + C2).
double final_bound_at(unsigned K);
double final_bound_limit();
// max over K = 2..k_max and infinity.
double final_bound_sup(unsigned k_max = 64);

// Seeded instance generators. Candidates are composites up to 10^4 filtered
// by the hypothesis, thinned greedily in random order.
using Rng = std::mt19937_64;

struct MassInstance {
  std::vector<double> c, d, D;
};
MassInstance generate_mass_instance(Rng& rng, std::size_t max_len = 20);

struct SetInstance {
  CheckedSet set;
  std::uint64_t n = 0;
  double v = 0.0;
};
// v is drawn from {1/20, ..., 20/20}.
SetInstance generate_lemma25_instance(Rng& rng);
// v is drawn from {1/20, ..., 19/20} unless fixed_v is given.
SetInstance generate_prop32_instance(Rng& rng, double fixed_v = 0.0);

}  // namespace pslab
