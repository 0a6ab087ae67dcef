#include "pslab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "pslab/constants.hpp"
#include "pslab/errors.hpp"
#include "pslab/mertens.hpp"
#include "pslab/series.hpp"
#include "pslab/summation.hpp"

namespace pslab {

namespace {

constexpr double kSlack = 1e-12;

BqEntry make_entry(std::uint64_t q, double mu_q) {
  BqEntry e;
  e.q = q;
  e.mu_q = mu_q;
  e.m_q = m_lower(q);
  e.M_q = M_envelope(static_cast<double>(q));
  e.r_q = r_ratio(q);
  e.b_q = constants::kQuarterPi * e.M_q / (e.m_q * e.m_q) * mu_q;
  return e;
}

void require_odd_prime(std::uint64_t q, const char* what) {
  if (q < 3 || !is_prime_u64(q)) throw DomainError(std::string(what) + " needs an odd prime, got " + std::to_string(q));
}

}  // namespace

BqEntry b_value(std::uint64_t q) {
  require_odd_prime(q, "b_value");
  return make_entry(q, mu(static_cast<double>(q)).value);
}

std::vector<BqEntry> b_table(std::uint64_t limit) {
  const MertensTable table(std::max<std::uint64_t>(limit, 3));
  std::vector<BqEntry> out;
  for (std::uint64_t q : table.primes()) {
    if (q == 2 || q > limit) continue;
    out.push_back(make_entry(q, table.mu(static_cast<double>(q)).value));
  }
  return out;
}

const std::vector<std::uint64_t>& bq_table_primes() {
  static const std::vector<std::uint64_t> primes = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  return primes;
}

ConstantsReport bound_constants() {
  ConstantsReport r;
  r.M = M_envelope(3.0);
  const double mu7 = mu(7).value;
  const double mu19 = mu(19).value;
  const double mu23 = mu(23).value;
  auto density = [](std::uint64_t p) { return to_double(l_density_exact(p)); };

  CompensatedSum inner;
  for (std::uint64_t p : {3, 5, 7}) inner.add(density(p) / (mu7 * mu7));
  for (std::uint64_t p : {11, 13, 17, 19}) inner.add(density(p) / (mu19 * mu19));
  inner.add(density(23) / (mu23 * mu23));
  r.inner_sum = inner.value();

  const double scale = constants::kQuarterPi * r.M * constants::kExpEulerGamma;
  r.C1 = scale * r.inner_sum;
  // prod_{p <= 23} (1 - 1/p) = sum_{p > 23} d(L_p)
  r.C2 = scale / (mu23 * mu23) * to_double(mertens_product_below(24));
  r.final_bound = 2.0 * (r.C1 + r.C2);
  r.ess_const = constants::kExpEulerGamma * constants::kQuarterPi;
  return r;
}

bool mass_lemma_check(std::span<const double> c, std::span<const double> d, std::span<const double> D) {
  if (c.size() != d.size() || c.size() != D.size()) throw PreconditionError("mass lemma: lists differ in length");
  double prefix = 0.0;
  double prev_D = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(c[i] >= 0.0) || (i > 0 && c[i] > c[i - 1])) {
      throw PreconditionError("mass lemma: c must be non-increasing and >= 0 (index " + std::to_string(i) + ")");
    }
    if (!(d[i] >= 0.0)) throw PreconditionError("mass lemma: d must be >= 0 (index " + std::to_string(i) + ")");
    if (!(D[i] >= prev_D)) {
      throw PreconditionError("mass lemma: D must be non-decreasing from 0 (index " + std::to_string(i) + ")");
    }
    prefix += d[i];
    if (prefix > D[i] + kSlack) {
      throw PreconditionError("mass lemma: prefix sum of d exceeds D at index " + std::to_string(i));
    }
    prev_D = D[i];
  }
  CompensatedSum lhs;
  CompensatedSum rhs;
  prev_D = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    lhs.add(c[i] * d[i]);
    rhs.add(c[i] * (D[i] - prev_D));
    prev_D = D[i];
  }
  return lhs.value() <= rhs.value() + kSlack;
}

double pi4_partition_sum(std::span<const double> partition) {
  if (partition.size() < 2 || partition.front() != 0.0 || partition.back() != 1.0) {
    throw DomainError("partition must run from 0 to 1");
  }
  CompensatedSum acc;
  for (std::size_t i = 1; i < partition.size(); ++i) {
    const double lo = partition[i - 1];
    const double hi = partition[i];
    if (!(hi > lo)) throw DomainError("partition must be strictly increasing (index " + std::to_string(i) + ")");
    acc.add((std::sqrt(hi) - std::sqrt(lo)) / (1.0 + lo));
  }
  return acc.value();
}

double pi4_uniform_sum(std::uint64_t k) {
  if (k < 1) throw DomainError("uniform partition needs k >= 1");
  CompensatedSum acc;
  const double kd = static_cast<double>(k);
  double prev_root = 0.0;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const double lo = static_cast<double>(i - 1) / kd;
    const double root = std::sqrt(static_cast<double>(i) / kd);
    acc.add((root - prev_root) / (1.0 + lo));
    prev_root = root;
  }
  return acc.value();
}

InequalityCheck lemma25_check(const CheckedSet& set, std::uint64_t n, double v) {
  if (n < 2) throw PreconditionError("lemma25_check: n must be >= 2");
  if (!(v >= 0.0)) throw PreconditionError("lemma25_check: v must be >= 0");
  if (!set.l_primitive) throw PreconditionError("lemma25_check: A must be L-primitive");
  std::string offending;
  for (std::uint64_t a : set.elements) {
    const bool ok = a != n && is_l_multiple(a, n) &&
                    compare_pow(default_factorizer().largest_prime_factor(a), 1.0 + v, a) <= 0;
    if (!ok) offending += (offending.empty() ? "" : ",") + std::to_string(a);
  }
  if (!offending.empty()) {
    throw PreconditionError("lemma25_check: hypotheses fail for a = " + offending);
  }
  InequalityCheck out;
  out.lhs = f_sum(set.elements);
  Rational mass = 0;
  for (std::uint64_t a : set.elements) mass += l_density_exact(a);
  const std::uint64_t q = default_factorizer().largest_prime_factor(n);
  out.rhs = constants::kExpEulerGamma / m_lower(q) * to_double(mass) / (1.0 + v);
  out.holds = out.lhs <= out.rhs + kSlack;
  return out;
}

Prop32Check prop32_check(const CheckedSet& set, std::uint64_t n, double v, std::uint64_t disjointness_bound) {
  if (n < 2) throw PreconditionError("prop32_check: n must be >= 2");
  if (!(v > 0.0 && v < 1.0)) throw PreconditionError("prop32_check: v must lie in (0, 1)");
  if (!set.primitive) throw PreconditionError("prop32_check: A must be primitive");
  if (std::binary_search(set.elements.begin(), set.elements.end(), n)) {
    throw PreconditionError("prop32_check: n must not belong to A");
  }
  const auto& fz = default_factorizer();
  std::vector<std::uint64_t> in_ln;
  std::string offending;
  for (std::uint64_t a : set.elements) {
    if (!is_l_multiple(a, n)) continue;
    if (compare_pow(fz.largest_prime_factor(a), 1.0 + v, a) <= 0) {
      offending += (offending.empty() ? "" : ",") + std::to_string(a);
    }
    in_ln.push_back(a);
  }
  if (!offending.empty()) throw PreconditionError("prop32_check: P(a)^{1+v} > a fails for a = " + offending);

  Prop32Check out;
  Rational lhs = 0;
  for (std::uint64_t a : in_ln) lhs += l_density_exact(a);
  const std::uint64_t q = fz.largest_prime_factor(n);
  out.lhs = to_double(lhs);
  out.rhs = std::sqrt(v) * r_ratio(q) * to_double(l_density_exact(n));
  out.holds = out.lhs <= out.rhs + kSlack;

  // Members of L_{ac} up to the bound, tagged by owner; a second owner is a
  // collision.
  if (disjointness_bound >= 2 && !in_ln.empty()) {
    std::vector<std::uint32_t> owner(disjointness_bound + 1, 0);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t a : in_ln) {
      if (a > disjointness_bound) continue;
      const auto spec = make_cset_spec(a, v, disjointness_bound / a);
      for (std::uint64_t c : c_set(spec, disjointness_bound / a)) pairs.emplace_back(a, c);
    }
    out.pairs = pairs.size();
    for (std::size_t id = 0; id < pairs.size(); ++id) {
      const auto [a, c] = pairs[id];
      const std::uint64_t ac = a * c;
      const std::uint64_t big = std::max(fz.largest_prime_factor(a), c > 1 ? fz.largest_prime_factor(c) : 0);
      for (std::uint64_t b = 1; b <= disjointness_bound / ac; ++b) {
        if (b > 1 && fz.smallest_prime_factor(b) < big) continue;
        const std::uint64_t m = ac * b;
        if (owner[m] != 0) {
          if (out.collisions == 0) {
            const auto [a2, c2] = pairs[owner[m] - 1];
            out.first_collision = std::to_string(m) + " in L_{" + std::to_string(a) + "*" + std::to_string(c) +
                                  "} and L_{" + std::to_string(a2) + "*" + std::to_string(c2) + "}";
          }
          ++out.collisions;
        } else {
          owner[m] = static_cast<std::uint32_t>(id + 1);
        }
      }
    }
  }
  if (out.collisions != 0) {
    out.holds = false;
    out.detail = "disjointness: " + out.first_collision;
  }
  return out;
}

bool logp2p_check(std::uint64_t q) {
  require_odd_prime(q, "logp2p_check");
  const double qd = static_cast<double>(q);
  const double threshold = std::log(qd) / std::log(2.0 * qd);
  if (q <= 47) return b_value(q).b_q > threshold;
  // mu_q <= M_q, so b_q <= (pi/4) M_q^2 / m_q^2.
  const double M = M_envelope(qd);
  const double m = m_lower(q);
  return constants::kQuarterPi * M * M / (m * m) > threshold;
}

double final_bound_at(unsigned K) {
  if (K < 2) throw DomainError("final_bound_at needs K >= 2");
  const auto c = bound_constants();
  const double two_k = std::ldexp(1.0, static_cast<int>(K));
  const double f_top = 1.0 / (two_k * static_cast<double>(K) * constants::kLn2);
  return f_top + (2.0 - std::ldexp(1.0, 1 - static_cast<int>(K))) * c.C1 + 2.0 * c.C2;
}

double final_bound_limit() {
  const auto c = bound_constants();
  return 2.0 * (c.C1 + c.C2);
}

double final_bound_sup(unsigned k_max) {
  double best = final_bound_limit();
  for (unsigned K = 2; K <= k_max; ++K) best = std::max(best, final_bound_at(K));
  return best;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

constexpr std::uint64_t kCandidateLimit = 10'000;

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return boost::random::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform(rng, 0, i - 1)]);
}

}  // namespace

MassInstance generate_mass_instance(Rng& rng, std::size_t max_len) {
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  MassInstance m;
  const std::size_t k = uniform(rng, 1, std::max<std::size_t>(1, max_len));
  double D = 0.0;
  double prefix = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (uniform(rng, 0, 3) != 0) D += unit(rng);
    m.D.push_back(D);
    const double d = unit(rng) * (D - prefix);
    m.d.push_back(d);
    prefix += d;
    m.c.push_back(unit(rng));
  }
  std::sort(m.c.rbegin(), m.c.rend());
  return m;
}

SetInstance generate_lemma25_instance(Rng& rng) {
  const auto& fz = default_factorizer();
  SetInstance inst;
  inst.n = uniform(rng, 2, 100);
  inst.v = static_cast<double>(uniform(rng, 1, 20)) / 20.0;
  std::vector<std::uint64_t> cand;
  for (std::uint64_t a = 2 * inst.n; a <= kCandidateLimit; a += inst.n) {
    if (is_l_multiple(a, inst.n) && compare_pow(fz.largest_prime_factor(a), 1.0 + inst.v, a) <= 0) cand.push_back(a);
  }
  shuffle(cand, rng);
  const std::size_t target = uniform(rng, 0, 12);
  std::vector<std::uint64_t> chosen;
  for (std::uint64_t a : cand) {
    if (chosen.size() >= target) break;
    const bool free = std::none_of(chosen.begin(), chosen.end(),
                                   [&](std::uint64_t b) { return is_l_multiple(a, b) || is_l_multiple(b, a); });
    if (free) chosen.push_back(a);
  }
  inst.set = check_set(chosen);
  return inst;
}

SetInstance generate_prop32_instance(Rng& rng, double fixed_v) {
  const auto& fz = default_factorizer();
  SetInstance inst;
  for (;;) {
    inst.n = uniform(rng, 2, 60);
    inst.v = fixed_v > 0.0 ? fixed_v : static_cast<double>(uniform(rng, 1, 19)) / 20.0;
    std::vector<std::uint64_t> cand;
    for (std::uint64_t a = 2 * inst.n; a <= kCandidateLimit; a += inst.n) {
      if (is_l_multiple(a, inst.n) && compare_pow(fz.largest_prime_factor(a), 1.0 + inst.v, a) > 0) cand.push_back(a);
    }
    if (cand.empty()) continue;
    // A few members outside L_n; they must not enter the left side.
    for (int k = 0; k < 4; ++k) {
      const std::uint64_t a = uniform(rng, 4, kCandidateLimit);
      if (a != inst.n && !fz.factorize(a).is_prime() && !is_l_multiple(a, inst.n)) cand.push_back(a);
    }
    shuffle(cand, rng);
    const std::size_t target = uniform(rng, 1, 16);
    std::vector<std::uint64_t> chosen;
    for (std::uint64_t a : cand) {
      if (chosen.size() >= target) break;
      const bool free =
          std::none_of(chosen.begin(), chosen.end(), [&](std::uint64_t b) { return a % b == 0 || b % a == 0; });
      if (free) chosen.push_back(a);
    }
    inst.set = check_set(chosen);
    return inst;
  }
}

}  // namespace pslab
