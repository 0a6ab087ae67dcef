// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pslab/bounds.hpp"
#include "pslab/constants.hpp"
#include "pslab/dickman.hpp"
#include "pslab/lsets.hpp"
#include "pslab/mertens.hpp"
#include "pslab/primes.hpp"
#include "pslab/series.hpp"
#include "pslab/verify.hpp"

using namespace pslab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Outcome mu_table_values() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = run_suite("mu-table");
  const double secs = seconds_since(t0);
  o.detail << r.passes << "/" << r.cases << " published values within half a unit in the 4th digit, " << secs << " s";
  for (const auto& w : r.failures) o.detail << "; " << w.case_id << " " << w.detail;
  o.require(r.ok(), "all tabulated values");
  o.require(secs < 1.0, "runtime < 1 s");
  return o;
}

Outcome mu_scan_ten_million() {
  Outcome o;
  ScanOptions opts;
  opts.prime_count = 10'000'000;
  opts.threads = 1;
  auto t0 = Clock::now();
  const auto one = mu_scan(opts);
  const double secs1 = seconds_since(t0);
  opts.threads = 8;
  t0 = Clock::now();
  const auto eight = mu_scan(opts);
  const double secs8 = seconds_since(t0);
  o.detail << "last prime " << one.last_prime << ", witnesses " << one.report.failures.size() << ", min mu "
           << one.min_mu << " at " << one.min_at << ", " << secs1 << " s (1 thread), " << secs8 << " s (8 threads)";
  o.require(one.complete && one.primes_done == 10'000'000, "scan complete");
  o.require(one.report.failures.empty() && eight.report.failures.empty(), "zero witnesses");
  o.require(one.log_sum == eight.log_sum && one.compensation == eight.compensation && one.min_mu == eight.min_mu &&
                one.min_at == eight.min_at && one.last_prime == eight.last_prime,
            "identical for 1 and 8 threads");
  o.require(secs1 <= 60.0 && secs8 <= 60.0, "runtime <= 60 s");
  return o;
}

Outcome bq_values() {
  Outcome o;
  const auto r = run_suite("bq-table");
  double worst = 0.0;
  std::uint64_t worst_q = 0;
  for (const auto& e : b_table(10'000)) {
    if (e.b_q > worst) {
      worst = e.b_q;
      worst_q = e.q;
    }
  }
  o.detail << r.passes << "/" << r.cases << " tabulated b_q; max b_q for q <= 10^4 is " << worst << " at q=" << worst_q;
  o.require(r.ok() && r.cases == 14, "14 tabulated values");
  o.require(worst < 0.901, "b_q < 0.901");
  return o;
}

Outcome bound_constant_values() {
  Outcome o;
  const auto c = bound_constants();
  const double sup = final_bound_sup();
  o.detail.precision(12);
  o.detail << "C1 " << c.C1 << ", C2 " << c.C2 << ", inner " << c.inner_sum << ", 2(C1+C2) " << c.final_bound
           << ", sup " << sup;
  o.require(std::abs(c.C1 - 0.5463) <= 1e-4, "C1");
  o.require(std::abs(c.C2 - 0.251135) <= 1e-5, "C2");
  o.require(std::abs(c.inner_sum - 0.390126) <= 1e-5, "inner sum");
  o.require(c.final_bound > 1.594 && c.final_bound <= 1.595, "2(C1+C2) in (1.594, 1.595]");
  o.require(sup <= 1.595, "sup over K");
  return o;
}

Outcome tau_and_f_primes() {
  Outcome o;
  const auto tau = solve_tau(1e-10);
  const double residual = tau_equation(tau.value);
  const auto fp = f_prime_total(1e-4);
  const double ess = constants::kExpEulerGamma * constants::kQuarterPi;
  o.detail.precision(10);
  o.detail << "tau " << tau.value << " (residual " << residual << "), f(primes) " << fp.value << " +- "
           << fp.tail_bound << ", e^gamma pi/4 " << ess;
  o.require(std::abs(tau.value - 1.1403) <= 5e-4, "tau");
  o.require(std::abs(residual) < 1e-6, "residual");
  o.require(std::abs(fp.value - 1.6366) <= 5e-4, "f(primes)");
  o.require(std::abs(ess - 1.399) <= 1e-3, "e^gamma pi/4");
  return o;
}

Outcome quarter_pi_sums() {
  Outcome o;
  const double uniform = pi4_uniform_sum(1'000'000);
  const auto r = run_suite("pi4");
  o.detail.precision(12);
  o.detail << "uniform k=10^6 " << uniform << "; random partitions " << r.passes << "/" << r.cases;
  o.require(std::abs(uniform - constants::kQuarterPi) <= 1e-5, "uniform sum");
  o.require(r.ok(), "every partition >= pi/4");
  return o;
}

Outcome logp2p_pattern() {
  Outcome o;
  std::vector<std::uint64_t> true_at;
  std::uint64_t checked = 0;
  for (std::uint64_t q : simple_sieve(100'000)) {
    if (q == 2) continue;
    ++checked;
    if (logp2p_check(q)) true_at.push_back(q);
  }
  const std::vector<std::uint64_t> expected{3, 5, 7, 11, 13, 17, 19, 23};
  o.detail << "true at " << true_at.size() << " of " << checked << " odd primes <= 10^5, largest "
           << (true_at.empty() ? 0 : true_at.back());
  o.require(true_at == expected, "true exactly for q <= 23");
  return o;
}

Outcome exact_identities() {
  Outcome o;
  std::uint64_t checked = 0;
  bool ok_sum = true;
  Rational running = 0;
  Rational product = 1;
  for (std::uint64_t y = 2; y <= 100; ++y) {
    if (is_prime_u64(y)) {
      running += l_density_exact(y);
      product *= Rational(y - 1, y);
    }
    ok_sum = ok_sum && running == 1 - product;
    ++checked;
  }
  bool ok_tel = true;
  for (std::uint64_t y = 2; y <= 50; ++y) ok_tel = ok_tel && sum_dln_smooth(1, y) + mertens_product_below(y + 1) == 1;
  o.detail << "prime density identity for y = 2..100, telescoping for y = 2..50";
  o.require(ok_sum, "sum of d(L_p) = 1 - prod(1 - 1/p)");
  o.require(ok_tel, "telescoping identity");
  return o;
}

Outcome property_suites() {
  Outcome o;
  const char* names[] = {"trichotomy", "genset", "mass", "disjointness", "prop32", "lemma25"};
  const std::uint64_t sizes[] = {0, 1000, 10'000, 100, 100, 100};
  for (std::size_t i = 0; i < std::size(names); ++i) {
    const auto r = run_suite(names[i], 1, sizes[i]);
    o.detail << (i ? ", " : "") << names[i] << " " << r.passes << "/" << r.cases;
    o.require(r.ok(), names[i]);
  }
  return o;
}

Outcome primitive_search() {
  Outcome o;
  bool primes_win = true;
  for (unsigned n = 4; n <= 16; ++n) primes_win = primes_win && exhaustive_primitive_max(n).set.elements == simple_sieve(n);
  bool oracle = true;
  std::uint64_t pruned = 0, brute = 0;
  for (unsigned n = 4; n <= 14; ++n) {
    const auto a = exhaustive_primitive_max(n);
    const auto b = brute_force_primitive_max(n);
    oracle = oracle && a.set.elements == b.set.elements;
    pruned += a.nodes;
    brute += b.nodes;
  }
  o.detail << "nodes for N = 4..14: " << pruned << " pruned vs " << brute << " brute force";
  o.require(primes_win, "primes <= N maximize for N <= 16");
  o.require(oracle, "pruned equals brute force for N <= 14");
  return o;
}

Outcome chains() {
  Outcome o;
  std::vector<std::uint64_t> all(999);
  std::iota(all.begin(), all.end(), 2);
  const auto c = longest_l_chain(all);
  std::string why;
  const bool valid = validate_chain(c, &why);
  o.detail << "length " << c.elements.size() << ", chain";
  for (auto x : c.elements) o.detail << " " << x;
  o.require(c.elements.size() == 9, "length 9");
  o.require(valid, "certificates revalidate: " + why);
  return o;
}

Outcome dickman() {
  Outcome o;
  const double rho2 = dickman_rho(2.0);
  const double total = default_dickman_table().total_integral();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> pick(10'000'000, 100'000'000);
  std::vector<std::uint64_t> sample(100'000);
  for (auto& n : sample) n = pick(rng);
  const auto st = dickman_statistic(sample, 1.0);
  o.detail.precision(10);
  o.detail << "rho(2) error " << std::abs(rho2 - (1.0 - std::log(2.0))) << ", integral " << total << ", statistic "
           << st.statistic << " vs " << st.theoretical;
  o.require(std::abs(rho2 - (1.0 - std::log(2.0))) <= 1e-8, "rho(2)");
  o.require(std::abs(total - constants::kExpEulerGamma) <= 1e-4, "integral of rho");
  o.require(std::abs(st.statistic - st.theoretical) <= 0.25, "statistic within 0.25");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"mu table", mu_table_values},
      {"mu scan, first 10^7 odd primes", mu_scan_ten_million},
      {"b_q table and bound", bq_values},
      {"bound constants", bound_constant_values},
      {"tau, f(primes), e^gamma pi/4", tau_and_f_primes},
      {"pi/4 partition sums", quarter_pi_sums},
      {"log q / log 2q comparison", logp2p_pattern},
      {"exact rational identities", exact_identities},
      {"property suites", property_suites},
      {"primitive maximization", primitive_search},
      {"L-divisibility chains", chains},
      {"Dickman rho and statistic", dickman},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
