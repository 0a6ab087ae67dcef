#include "pslab/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "pslab/bounds.hpp"
#include "pslab/constants.hpp"
#include "pslab/dickman.hpp"
#include "pslab/errors.hpp"
#include "pslab/mertens.hpp"
#include "pslab/parallel.hpp"
#include "pslab/series.hpp"
#include "pslab/summation.hpp"

namespace pslab {

// ---------------------------------------------------------------------------
// Primitive maximization

namespace {

constexpr double kTieTolerance = 1e-14;

bool better(double value, double best) { return value > best + kTieTolerance * std::fabs(best); }
bool tied(double value, double best) { return std::fabs(value - best) <= kTieTolerance * std::fabs(best); }

std::vector<std::uint64_t> mask_to_set(std::uint32_t mask) {
  std::vector<std::uint64_t> out;
  for (unsigned i = 0; i < 32; ++i) {
    if (mask >> i & 1u) out.push_back(i + 2);
  }
  return out;
}

struct Searcher {
  unsigned m = 0;
  std::vector<double> f;
  std::vector<std::uint32_t> conflict;
  double best = -1.0;
  std::uint32_t best_mask = 0;
  std::uint64_t nodes = 0;

  double remaining(unsigned i, std::uint32_t blocked) const {
    double r = 0.0;
    for (unsigned j = i; j < m; ++j) {
      if (!(blocked >> j & 1u)) r += f[j];
    }
    return r;
  }

  void dfs(unsigned i, std::uint32_t chosen, std::uint32_t blocked, double cur) {
    ++nodes;
    if (i == m) {
      if (better(cur, best)) {
        best = cur;
        best_mask = chosen;
      }
      return;
    }
    if (best >= 0.0 && !better(cur + remaining(i, blocked), best)) return;
    const std::uint32_t bit = 1u << i;
    if (!(blocked & bit)) dfs(i + 1, chosen | bit, blocked | conflict[i], cur + f[i]);
    dfs(i + 1, chosen, blocked | bit, cur);
  }
};

double f_of(std::uint64_t n) {
  const double x = static_cast<double>(n);
  return 1.0 / (x * std::log(x));
}

}  // namespace

PrimitiveMax exhaustive_primitive_max(unsigned N) {
  if (N < 4 || N > 24) throw DomainError("exhaustive_primitive_max needs 4 <= N <= 24");
  Searcher s;
  s.m = N - 1;
  s.f.resize(s.m);
  s.conflict.assign(s.m, 0);
  for (unsigned i = 0; i < s.m; ++i) {
    s.f[i] = f_of(i + 2);
    for (unsigned j = 0; j < s.m; ++j) {
      if (i != j && ((j + 2) % (i + 2) == 0 || (i + 2) % (j + 2) == 0)) s.conflict[i] |= 1u << j;
    }
  }
  s.dfs(0, 0, 0, 0.0);
  PrimitiveMax out;
  out.set = check_set(mask_to_set(s.best_mask));
  out.value = f_sum(out.set.elements);
  out.nodes = s.nodes;
  return out;
}

PrimitiveMax brute_force_primitive_max(unsigned N) {
  if (N < 4 || N > 20) throw DomainError("brute_force_primitive_max needs 4 <= N <= 20");
  const unsigned m = N - 1;
  double best = -1.0;
  std::vector<std::uint64_t> best_set;
  PrimitiveMax out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    ++out.nodes;
    const auto set = mask_to_set(mask);
    bool primitive = true;
    for (std::size_t i = 0; i < set.size() && primitive; ++i) {
      for (std::size_t j = i + 1; j < set.size() && primitive; ++j) primitive = set[j] % set[i] != 0;
    }
    if (!primitive) continue;
    double value = 0.0;
    for (std::uint64_t n : set) value += f_of(n);
    if (better(value, best) || (tied(value, best) && set < best_set)) {
      best = value;
      best_set = set;
    }
  }
  out.set = check_set(best_set);
  out.value = f_sum(out.set.elements);
  return out;
}

// ---------------------------------------------------------------------------
// Chains

ChainResult longest_l_chain(std::span<const std::uint64_t> set) {
  const CheckedSet sorted = check_set(set);
  const auto& e = sorted.elements;
  ChainResult out;
  if (e.empty()) return out;
  const std::size_t n = e.size();
  // successors[i]: indices j > i with e[j] an L-multiple of e[i].
  std::vector<std::vector<std::uint32_t>> successors(n);
  double multiples_cost = 0.0;
  for (std::uint64_t a : e) multiples_cost += static_cast<double>(e.back()) / static_cast<double>(a);
  if (multiples_cost < 0.5 * static_cast<double>(n) * static_cast<double>(n)) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::uint64_t m = 2 * e[i]; m <= e.back(); m += e[i]) {
        const auto it = std::lower_bound(e.begin(), e.end(), m);
        if (it != e.end() && *it == m && is_l_multiple(m, e[i])) {
          successors[i].push_back(static_cast<std::uint32_t>(it - e.begin()));
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (e[j] % e[i] == 0 && is_l_multiple(e[j], e[i])) successors[i].push_back(static_cast<std::uint32_t>(j));
      }
    }
  }
  std::vector<std::uint32_t> length(n, 1);
  for (std::size_t i = n; i-- > 0;) {
    for (auto j : successors[i]) length[i] = std::max(length[i], length[j] + 1);
  }
  // Smallest start among the longest, then the smallest successor that keeps
  // the length; successors are listed in increasing order.
  std::size_t cur = static_cast<std::size_t>(std::max_element(length.begin(), length.end()) - length.begin());
  out.elements.push_back(e[cur]);
  while (length[cur] > 1) {
    for (auto j : successors[cur]) {
      if (length[j] + 1 == length[cur]) {
        cur = j;
        break;
      }
    }
    out.elements.push_back(e[cur]);
  }
  const auto& fz = default_factorizer();
  for (std::size_t i = 0; i + 1 < out.elements.size(); ++i) {
    ChainLink link;
    link.b = out.elements[i + 1] / out.elements[i];
    link.small_prime = link.b > 1 ? fz.smallest_prime_factor(link.b) : 0;
    link.big_prime = fz.largest_prime_factor(out.elements[i]);
    out.certificates.push_back(link);
  }
  return out;
}

bool validate_chain(const ChainResult& chain, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (chain.elements.empty()) return fail("empty chain");
  if (chain.certificates.size() + 1 != chain.elements.size()) return fail("certificate count mismatch");
  for (std::size_t i = 0; i < chain.certificates.size(); ++i) {
    const auto& link = chain.certificates[i];
    const std::uint64_t d = chain.elements[i];
    const std::uint64_t next = chain.elements[i + 1];
    const std::string at = " at link " + std::to_string(i);
    if (link.b < 2 || d * link.b != next) return fail("d_{j+1} != b d_j" + at);
    const auto fb = factorize(link.b);
    const auto fd = factorize(d);
    if (fb.small_prime() != link.small_prime) return fail("p(b) mismatch" + at);
    if (fd.big_prime() != link.big_prime) return fail("P(d) mismatch" + at);
    if (fb.small_prime() < fd.big_prime()) return fail("p(b) < P(d)" + at);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Densities

namespace {

DensityEstimate estimate_from_flags(const std::vector<char>& member, std::uint64_t x) {
  DensityEstimate out;
  out.x = x;
  CompensatedSum harmonic;
  CompensatedSum loglog;
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (!member[n]) continue;
    ++out.count;
    const double nd = static_cast<double>(n);
    harmonic.add(1.0 / nd);
    if (n > 1) loglog.add(1.0 / (nd * std::log(nd)));
  }
  const double lx = std::log(static_cast<double>(x));
  out.nat = static_cast<double>(out.count) / static_cast<double>(x);
  out.log_d = harmonic.value() / lx;
  out.loglog_d = loglog.value() / std::log(lx);
  return out;
}

std::string join(std::span<const std::uint64_t> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

DensityEstimate density_estimate_lset(std::span<const std::uint64_t> generators, std::uint64_t x) {
  if (x < 16) throw DomainError("density_estimate needs x >= 16");
  const auto gen = generating_set(generators);
  const auto& fz = default_factorizer();
  std::vector<char> member(x + 1, 0);
  bool exact = true;
  Rational total = 0;
  for (std::uint64_t a : gen.elements) {
    const std::uint64_t big = fz.largest_prime_factor(a);
    if (big <= kExactDensityPrimeLimit) {
      total += l_density_exact(a);
    } else {
      exact = false;
    }
    if (a > x) continue;
    for (std::uint64_t b = 1; b <= x / a; ++b) {
      if (b == 1 || fz.smallest_prime_factor(b) >= big) member[a * b] = 1;
    }
  }
  auto out = estimate_from_flags(member, x);
  out.descriptor = "L_{" + join(gen.elements) + "}";
  if (exact) out.exact = total;
  return out;
}

DensityEstimate density_estimate_set(std::span<const std::uint64_t> set, std::uint64_t x) {
  if (x < 16) throw DomainError("density_estimate needs x >= 16");
  std::vector<char> member(x + 1, 0);
  for (std::uint64_t n : set) {
    if (n >= 1 && n <= x) member[n] = 1;
  }
  auto out = estimate_from_flags(member, x);
  out.descriptor = "explicit set of " + std::to_string(set.size());
  return out;
}

Rational sum_dln_smooth(unsigned k, std::uint64_t y) {
  if (k < 1) throw DomainError("sum_dln_smooth needs k >= 1");
  if (y < 2) throw DomainError("sum_dln_smooth needs y >= 2");
  if (y > kExactDensityPrimeLimit) throw DomainError("sum_dln_smooth: y beyond the exact density range");
  std::vector<Rational> h(k, Rational(0));
  h[0] = 1;
  Rational total = 0;
  for (std::uint64_t q : simple_sieve(y)) {
    const Rational inv = make_rational(1, q);
    for (unsigned j = 1; j < k; ++j) h[j] += inv * h[j - 1];
    total += l_density_exact(q) * h[k - 1];
  }
  return total;
}

// ---------------------------------------------------------------------------
// Published tables

const std::vector<TableRow>& published_mu_table() {
  static const std::vector<TableRow> rows = {
      {2, 1.235},    {3, 0.9784},   {5, 0.9555},   {7, 0.9242},   {11, 0.9762},  {13, 0.9492},  {17, 0.9679},
      {19, 0.9467},  {23, 0.9551},  {29, 0.9811},  {31, 0.9660},  {37, 0.9831},  {41, 0.9836},  {43, 0.9720},
      {47, 0.9718},  {53, 0.9808},  {59, 0.9883},  {61, 0.9795},  {67, 0.9854},  {71, 0.9841},  {73, 0.9766},
      {79, 0.9809},  {83, 0.9795},  {89, 0.9829},  {97, 0.9906},  {101, 0.9890}, {103, 0.9834}, {107, 0.9818},
      {109, 0.9765}, {113, 0.9749}, {127, 0.9902}, {131, 0.9887}, {137, 0.9902}, {139, 0.9858}, {149, 0.9925},
      {151, 0.9885}, {157, 0.9896}, {163, 0.9906}, {167, 0.9892}, {173, 0.9900}, {179, 0.9909}, {181, 0.9874},
      {191, 0.9921}, {193, 0.9889}, {197, 0.9876}, {199, 0.9844},
  };
  return rows;
}

const std::vector<TableRow>& published_bq_table() {
  static const std::vector<TableRow> rows = {
      {3, 0.9006},  {5, 0.8795},  {7, 0.8507},  {11, 0.8564}, {13, 0.8327}, {17, 0.8491}, {19, 0.8305},
      {23, 0.8232}, {29, 0.8266}, {31, 0.8139}, {37, 0.8184}, {41, 0.8189}, {43, 0.8092}, {47, 0.8090},
  };
  return rows;
}

double four_digit_tolerance(double published) {
  const double exponent = std::floor(std::log10(std::fabs(published)));
  return 0.5 * std::pow(10.0, exponent - 3.0) + 1e-12;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Each case draws from its own stream, so cases can run in any order.
Rng case_rng(std::uint64_t seed, std::uint64_t index) { return Rng(splitmix(splitmix(seed) ^ index)); }

std::uint64_t draw(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return boost::random::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

std::string fmt(double v, int digits = 10) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

struct CaseOutcome {
  bool ok = true;
  std::string id;
  std::string detail;
};

// Runs `count` independent cases in parallel and records them in index order.
void run_cases(VerificationReport& report, std::uint64_t count, unsigned threads,
               const std::function<CaseOutcome(std::uint64_t)>& body) {
  std::vector<CaseOutcome> outcomes(count);
  parallel_for(count, threads, [&](std::size_t i) {
    try {
      outcomes[i] = body(i);
    } catch (const std::exception& e) {
      outcomes[i] = {false, "case " + std::to_string(i), std::string("exception: ") + e.what()};
    }
  });
  for (auto& o : outcomes) report.record(o.ok, std::move(o.id), std::move(o.detail));
}

std::string set_text(const CheckedSet& s) { return "{" + join(s.elements) + "}"; }

void suite_mu_table(VerificationReport& r) {
  r.log_passes = true;
  const MertensTable table(199);
  for (const auto& row : published_mu_table()) {
    const double got = table.mu(static_cast<double>(row.q)).value;
    const double tol = four_digit_tolerance(row.value);
    const double diff = got - row.value;
    r.record(std::fabs(diff) <= tol, "q=" + std::to_string(row.q),
             "computed " + fmt(got) + " published " + fmt(row.value, 5) + " diff " + fmt(diff, 3) + " tol " +
                 fmt(tol, 2));
  }
}

void suite_bq_table(VerificationReport& r) {
  r.log_passes = true;
  for (const auto& row : published_bq_table()) {
    const double got = b_value(row.q).b_q;
    const double tol = four_digit_tolerance(row.value);
    const double diff = got - row.value;
    r.record(std::fabs(diff) <= tol, "q=" + std::to_string(row.q),
             "computed " + fmt(got) + " published " + fmt(row.value, 5) + " diff " + fmt(diff, 3));
  }
}

void suite_bq_bound(VerificationReport& r, std::uint64_t limit) {
  double worst = 0.0;
  std::uint64_t worst_q = 0;
  for (const auto& e : b_table(limit)) {
    if (e.b_q > worst) {
      worst = e.b_q;
      worst_q = e.q;
    }
    r.record(e.b_q < 0.901, "q=" + std::to_string(e.q), "b_q = " + fmt(e.b_q));
  }
  r.notes.push_back("largest b_q = " + fmt(worst) + " at q = " + std::to_string(worst_q));
}

void suite_envelope(VerificationReport& r, std::uint64_t limit) {
  constexpr double tol = 1e-12;
  const MertensTable table(limit);
  for (std::uint64_t p : table.primes()) {
    const auto mv = table.mu(static_cast<double>(p));
    const double pd = static_cast<double>(p);
    bool ok = m_envelope(p) <= mv.lo + tol && mv.hi <= M_envelope(pd) + tol;
    if (ok && pd > constants::kRosserSchoenfeldLower) {
      const double l = std::log(pd);
      const double w = 1.0 / (2.0 * l * l);
      ok = 1.0 - w <= mv.value && mv.value <= 1.0 + w;
    }
    r.record(ok, "p=" + std::to_string(p), "mu_p = " + fmt(mv.value));
  }
  r.notes.push_back("M_x on (" + fmt(static_cast<double>(limit)) + ", 2e9] is the paper-trusted range");
}

void suite_trichotomy(VerificationReport& r, std::uint64_t grid, unsigned threads) {
  constexpr std::uint64_t kBound = 1'000'000;
  constexpr std::size_t kWords = kBound / 64 + 1;
  const auto& fz = default_factorizer();
  std::vector<std::vector<std::uint64_t>> bits(grid + 1);
  parallel_for(grid - 1, threads, [&](std::size_t i) {
    const std::uint64_t a = i + 2;
    auto& w = bits[a];
    w.assign(kWords, 0);
    const std::uint64_t big = fz.largest_prime_factor(a);
    for (std::uint64_t b = 1; b <= kBound / a; ++b) {
      if (b == 1 || fz.smallest_prime_factor(b) >= big) {
        const std::uint64_t m = a * b;
        w[m / 64] |= std::uint64_t{1} << (m % 64);
      }
    }
  });
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t a = 2; a <= grid; ++a) {
    for (std::uint64_t b = a; b <= grid; ++b) pairs.emplace_back(a, b);
  }
  run_cases(r, pairs.size(), threads, [&](std::uint64_t i) {
    const auto [a, b] = pairs[i];
    std::uint64_t common = 0;
    for (std::size_t k = 0; k < kWords && common == 0; ++k) {
      const std::uint64_t both = bits[a][k] & bits[b][k];
      if (both) common = k * 64 + static_cast<std::uint64_t>(std::countr_zero(both));
    }
    const auto t = trichotomy(a, b);
    const bool ok = (common != 0) == (t != Trichotomy::Disjoint);
    return CaseOutcome{ok, std::to_string(a) + "," + std::to_string(b),
                       to_string(t) + (common ? ", common element " + std::to_string(common) : ", none found")};
  });
}

void suite_genset(VerificationReport& r, std::uint64_t seed, std::uint64_t cases, unsigned threads) {
  run_cases(r, cases, threads, [&](std::uint64_t i) {
    Rng rng = case_rng(seed, i);
    std::vector<std::uint64_t> s(draw(rng, 1, 80));
    for (auto& x : s) x = draw(rng, 2, 500);
    const auto sorted = check_set(s);
    const auto gen = generating_set(s);
    std::string why;
    if (!gen.l_primitive) why = "result not L-primitive";
    for (std::uint64_t g : gen.elements) {
      if (!std::binary_search(sorted.elements.begin(), sorted.elements.end(), g)) why = "not a subset";
    }
    for (std::uint64_t x : sorted.elements) {
      const auto divisors = std::count_if(gen.elements.begin(), gen.elements.end(),
                                          [&](std::uint64_t g) { return x % g == 0 && is_l_multiple(x, g); });
      if (divisors != 1) why = std::to_string(x) + " has " + std::to_string(divisors) + " L-divisors in <S>";
    }
    return CaseOutcome{why.empty(), "case " + std::to_string(i), why.empty() ? "" : why + "; S = " + set_text(sorted)};
  });
}

void suite_additivity(VerificationReport& r, std::uint64_t seed, std::uint64_t cases, unsigned threads) {
  run_cases(r, cases, threads, [&](std::uint64_t i) {
    Rng rng = case_rng(seed, i);
    std::vector<std::uint64_t> s(draw(rng, 1, 99));
    for (auto& x : s) x = draw(rng, 2, 100);
    const auto gen = generating_set(s);
    Rational total = 0;
    for (std::uint64_t a : gen.elements) total += l_density_exact(a);
    const bool ok = gen.l_primitive && total <= 1;
    return CaseOutcome{ok, "case " + std::to_string(i), ok ? "" : "sum " + total.get_str() + " for " + set_text(gen)};
  });
}

void suite_mass(VerificationReport& r, std::uint64_t seed, std::uint64_t cases, unsigned threads) {
  run_cases(r, cases, threads, [&](std::uint64_t i) {
    Rng rng = case_rng(seed, i);
    const auto m = generate_mass_instance(rng);
    const bool ok = mass_lemma_check(m.c, m.d, m.D);
    return CaseOutcome{ok, "case " + std::to_string(i), ok ? "" : "inequality failed, k = " + std::to_string(m.c.size())};
  });
}

void suite_lemma25(VerificationReport& r, std::uint64_t seed, std::uint64_t cases, unsigned threads) {
  run_cases(r, cases, threads, [&](std::uint64_t i) {
    Rng rng = case_rng(seed, i);
    const auto inst = generate_lemma25_instance(rng);
    const auto c = lemma25_check(inst.set, inst.n, inst.v);
    return CaseOutcome{c.holds, "case " + std::to_string(i),
                       c.holds ? "" : "A=" + set_text(inst.set) + " n=" + std::to_string(inst.n) + " v=" + fmt(inst.v) +
                                          " lhs=" + fmt(c.lhs) + " rhs=" + fmt(c.rhs)};
  });
}

void suite_prop32(VerificationReport& r, std::uint64_t seed, std::uint64_t cases, unsigned threads, bool fixed_v) {
  static constexpr double kVs[] = {0.25, 0.5, 0.75};
  run_cases(r, cases, threads, [&](std::uint64_t i) {
    Rng rng = case_rng(seed, i);
    const auto inst = generate_prop32_instance(rng, fixed_v ? kVs[i % 3] : 0.0);
    const auto c = prop32_check(inst.set, inst.n, inst.v);
    const bool ok = fixed_v ? c.collisions == 0 : c.holds;
    std::string detail = "A=" + set_text(inst.set) + " n=" + std::to_string(inst.n) + " v=" + fmt(inst.v);
    detail += fixed_v ? " pairs=" + std::to_string(c.pairs) + " collisions=" + std::to_string(c.collisions)
                      : " lhs=" + fmt(c.lhs) + " rhs=" + fmt(c.rhs);
    if (!c.first_collision.empty()) detail += " first " + c.first_collision;
    return CaseOutcome{ok, "case " + std::to_string(i), ok ? "" : detail};
  });
}

Rational direct_product(std::uint64_t y) {
  Rational p = 1;
  for (std::uint64_t q : simple_sieve(y)) p *= make_rational(q - 1, q);
  return p;
}

void suite_density_identity(VerificationReport& r, std::uint64_t top) {
  Rational sum = 0;
  for (std::uint64_t y = 2; y <= top; ++y) {
    if (is_prime_u64(y)) sum += l_density_exact(y);
    const Rational rhs = 1 - direct_product(y);
    r.record(sum == rhs, "y=" + std::to_string(y), sum == rhs ? "" : "lhs " + sum.get_str() + " rhs " + rhs.get_str());
  }
}

void suite_dln_telescoping(VerificationReport& r, std::uint64_t top) {
  for (std::uint64_t y = 2; y <= top; ++y) {
    const Rational total = sum_dln_smooth(1, y) + direct_product(y);
    r.record(total == 1, "y=" + std::to_string(y), total == 1 ? "" : "sum " + total.get_str());
  }
}

void suite_search(VerificationReport& r) {
  for (unsigned N = 4; N <= 16; ++N) {
    const auto got = exhaustive_primitive_max(N);
    const auto primes = simple_sieve(N);
    r.record(got.set.elements == primes, "max N=" + std::to_string(N),
             "found " + set_text(got.set) + " f=" + fmt(got.value));
  }
  for (unsigned N = 4; N <= 14; ++N) {
    const auto pruned = exhaustive_primitive_max(N);
    const auto oracle = brute_force_primitive_max(N);
    const bool ok = pruned.set.elements == oracle.set.elements && pruned.value == oracle.value;
    r.record(ok, "oracle N=" + std::to_string(N),
             ok ? "" : "pruned " + set_text(pruned.set) + " oracle " + set_text(oracle.set));
  }
}

void suite_chain(VerificationReport& r) {
  auto check = [&](const std::string& id, std::vector<std::uint64_t> set, std::size_t expected) {
    const auto chain = longest_l_chain(set);
    std::string why;
    const bool valid = validate_chain(chain, &why);
    r.record(valid && chain.elements.size() == expected, id,
             "length " + std::to_string(chain.elements.size()) + (valid ? "" : ", invalid: " + why));
  };
  std::vector<std::uint64_t> range(999);
  for (std::size_t i = 0; i < range.size(); ++i) range[i] = i + 2;
  check("[2,1000]", range, 9);
  check("{6,30,210}", {6, 30, 210}, 3);
  check("{3,6}", {3, 6}, 1);
}

void suite_dickman(VerificationReport& r, std::uint64_t seed, std::uint64_t samples, unsigned threads) {
  const double rho2 = dickman_rho(2.0);
  const double exact2 = 1.0 - std::log(2.0);
  r.record(std::fabs(rho2 - exact2) <= 1e-8, "rho(2)", "diff " + fmt(rho2 - exact2, 3));
  const auto& table = default_dickman_table();
  const double total = table.total_integral();
  r.record(std::fabs(total - constants::kExpEulerGamma) + table.total_tail_bound() <= 1e-4, "integral",
           "value " + fmt(total, 12) + " diff " + fmt(total - constants::kExpEulerGamma, 3));
  const double gap = dickman_richardson_gap();
  r.record(gap <= 1e-8, "richardson", "max |rho_h - rho_h/2| = " + fmt(gap, 3));
  Rng rng = case_rng(seed, 0);
  std::vector<std::uint64_t> sample(samples);
  for (auto& n : sample) n = draw(rng, 10'000'000, 100'000'000);
  const auto st = dickman_statistic(sample, 1.0, threads);
  r.record(std::fabs(st.statistic - st.theoretical) <= 0.25, "statistic v=1",
           "mean " + fmt(st.statistic, 6) + " target " + fmt(st.theoretical, 6) + " over " +
               std::to_string(st.samples) + " samples");
}

void suite_pi4(VerificationReport& r, std::uint64_t seed, std::uint64_t cases, unsigned threads) {
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  run_cases(r, cases, threads, [&](std::uint64_t i) {
    Rng rng = case_rng(seed, i);
    std::vector<double> part = {0.0, 1.0};
    const std::uint64_t k = draw(rng, 0, 200);
    for (std::uint64_t j = 0; j < k; ++j) part.push_back(unit(rng));
    std::sort(part.begin(), part.end());
    part.erase(std::unique(part.begin(), part.end()), part.end());
    // Refinement: every midpoint added.
    std::vector<double> fine;
    for (std::size_t j = 0; j + 1 < part.size(); ++j) {
      fine.push_back(part[j]);
      const double mid = 0.5 * (part[j] + part[j + 1]);
      if (mid > part[j] && mid < part[j + 1]) fine.push_back(mid);
    }
    fine.push_back(1.0);
    const double coarse_sum = pi4_partition_sum(part);
    const double fine_sum = pi4_partition_sum(fine);
    const bool ok = coarse_sum >= constants::kQuarterPi && fine_sum >= constants::kQuarterPi &&
                    fine_sum <= coarse_sum + 1e-15;
    return CaseOutcome{ok, "case " + std::to_string(i),
                       ok ? "" : "points " + std::to_string(part.size()) + " sum " + fmt(coarse_sum, 17) +
                                     " refined " + fmt(fine_sum, 17)};
  });
  const double uniform = pi4_uniform_sum(1'000'000);
  r.record(std::fabs(uniform - constants::kQuarterPi) <= 1e-5, "uniform k=1e6",
           "sum " + fmt(uniform, 12) + " diff " + fmt(uniform - constants::kQuarterPi, 3));
}

void suite_logp2p(VerificationReport& r, std::uint64_t limit) {
  for (std::uint64_t q : simple_sieve(std::max<std::uint64_t>(limit, 3))) {
    if (q == 2) continue;
    const bool expected = q <= 23;
    const bool got = logp2p_check(q);
    r.record(got == expected, "q=" + std::to_string(q), got ? "b_q > log q / log 2q" : "b_q <= log q / log 2q");
  }
}

using SuiteFn = std::function<void(VerificationReport&, std::uint64_t seed, std::uint64_t cases, unsigned threads)>;

struct SuiteEntry {
  std::string name;
  std::uint64_t default_cases;
  SuiteFn run;
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> suites = {
      {"mu-table", 46, [](auto& r, auto, auto, auto) { suite_mu_table(r); }},
      {"bq-table", 14, [](auto& r, auto, auto, auto) { suite_bq_table(r); }},
      {"bq-bound", 10'000, [](auto& r, auto, auto n, auto) { suite_bq_bound(r, n); }},
      {"envelope", 1'000'000, [](auto& r, auto, auto n, auto) { suite_envelope(r, n); }},
      {"trichotomy", 200, [](auto& r, auto, auto n, auto t) { suite_trichotomy(r, n, t); }},
      {"genset", 1000, [](auto& r, auto s, auto n, auto t) { suite_genset(r, s, n, t); }},
      {"additivity", 1000, [](auto& r, auto s, auto n, auto t) { suite_additivity(r, s, n, t); }},
      {"mass", 10'000, [](auto& r, auto s, auto n, auto t) { suite_mass(r, s, n, t); }},
      {"lemma25", 100, [](auto& r, auto s, auto n, auto t) { suite_lemma25(r, s, n, t); }},
      {"prop32", 100, [](auto& r, auto s, auto n, auto t) { suite_prop32(r, s, n, t, false); }},
      {"disjointness", 100, [](auto& r, auto s, auto n, auto t) { suite_prop32(r, s, n, t, true); }},
      {"density-identity", 100, [](auto& r, auto, auto n, auto) { suite_density_identity(r, n); }},
      {"dln-telescoping", 50, [](auto& r, auto, auto n, auto) { suite_dln_telescoping(r, n); }},
      {"search", 24, [](auto& r, auto, auto, auto) { suite_search(r); }},
      {"chain", 3, [](auto& r, auto, auto, auto) { suite_chain(r); }},
      {"pi4", 1000, [](auto& r, auto s, auto n, auto t) { suite_pi4(r, s, n, t); }},
      {"logp2p", 10'000, [](auto& r, auto, auto n, auto) { suite_logp2p(r, n); }},
      {"dickman", 100'000, [](auto& r, auto s, auto n, auto t) { suite_dickman(r, s, n, t); }},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    out.push_back("all");
    return out;
  }();
  return names;
}

VerificationReport run_suite(const std::string& name, std::uint64_t seed, std::uint64_t cases, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.suite = name;
  report.seed = seed;
  report.generator_version = kGeneratorVersion;
  if (name == "all") {
    for (const auto& s : registry()) {
      auto part = run_suite(s.name, seed, 0, threads);
      for (auto& w : part.failures) w.case_id = s.name + "/" + w.case_id;
      part.passed.clear();
      for (auto& note : part.notes) note = s.name + ": " + note;
      report.absorb(part);
    }
  } else {
    const auto it = std::find_if(registry().begin(), registry().end(), [&](const auto& s) { return s.name == name; });
    if (it == registry().end()) {
      std::string valid;
      for (const auto& n : suite_names()) valid += (valid.empty() ? "" : ", ") + n;
      throw DomainError("unknown suite '" + name + "'; valid suites: " + valid);
    }
    it->run(report, seed, cases == 0 ? it->default_cases : cases, std::max(1u, threads));
  }
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace pslab
