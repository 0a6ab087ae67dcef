#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "pslab/errors.hpp"
#include "pslab/lsets.hpp"
#include "pslab/mertens.hpp"
#include "pslab/primes.hpp"
#include "pslab/series.hpp"
#include "pslab/verify.hpp"

using namespace pslab;
using V = std::vector<std::uint64_t>;

TEST_CASE("primitive maximum for small N") {
  const auto r10 = exhaustive_primitive_max(10);
  CHECK(r10.set.elements == V{2, 3, 5, 7});
  CHECK(r10.value == doctest::Approx(1.22244).epsilon(1e-5));
  CHECK(exhaustive_primitive_max(4).set.elements == V{2, 3});
  for (unsigned n = 4; n <= 16; ++n) CHECK(exhaustive_primitive_max(n).set.elements == simple_sieve(n));
  CHECK_THROWS_AS(exhaustive_primitive_max(3), DomainError);
  CHECK_THROWS_AS(exhaustive_primitive_max(25), DomainError);
}

TEST_CASE("pruned search equals the brute-force oracle") {
  for (unsigned n = 4; n <= 14; ++n) {
    const auto a = exhaustive_primitive_max(n);
    const auto b = brute_force_primitive_max(n);
    CHECK(a.set.elements == b.set.elements);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-15));
    CHECK(a.nodes <= b.nodes);
  }
}

TEST_CASE("longest L-chains") {
  V all(999);
  std::iota(all.begin(), all.end(), 2);
  const auto c = longest_l_chain(all);
  CHECK(c.elements.size() == 9);
  CHECK(c.elements == V{2, 4, 8, 16, 32, 64, 128, 256, 512});
  CHECK(validate_chain(c));

  const auto t = longest_l_chain(V{6, 30, 210});
  CHECK(t.elements == V{6, 30, 210});
  CHECK(t.certificates.size() == 2);
  CHECK(t.certificates[0].b == 5);
  CHECK(t.certificates[0].big_prime == 3);
  CHECK(validate_chain(t));

  CHECK(longest_l_chain(V{3, 6}).elements.size() == 1);

  ChainResult forged;
  forged.elements = {3, 6};
  forged.certificates = {{2, 2, 3}};
  std::string why;
  CHECK_FALSE(validate_chain(forged, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("density estimators") {
  const auto l2 = density_estimate_lset(V{2}, 1'000'000);
  CHECK(l2.nat == 0.5);
  CHECK(l2.count == 500'000);
  const auto l23 = density_estimate_lset(V{2, 3}, 1'000'000);
  CHECK(std::abs(l23.nat - 2.0 / 3.0) <= 2e-6);
  REQUIRE(l23.exact);
  CHECK(*l23.exact == Rational(2, 3));
  const auto l = density_estimate_lset(V{4, 9, 25}, 1'000'000);
  const Rational exact = Rational(1, 4) + Rational(1, 18) + Rational(1, 75);
  CHECK(*l.exact == exact);
  CHECK(std::abs(l.nat - to_double(exact)) < 1e-3);
  // Convergence of nat to the exact density.
  for (std::uint64_t a : {6ULL, 10ULL, 12ULL, 45ULL}) {
    const auto e = density_estimate_lset(V{a}, 2'000'000);
    CHECK(std::abs(e.nat - to_double(*e.exact)) <= 64.0 / 2e6);
  }
  const auto explicit_set = density_estimate_set(V{2, 4, 6}, 100);
  CHECK(explicit_set.count == 3);
  CHECK_THROWS_AS(density_estimate_lset(V{2}, 10), DomainError);
}

TEST_CASE("smooth d(L_n) sums") {
  CHECK(sum_dln_smooth(1, 3) == Rational(2, 3));
  CHECK(sum_dln_smooth(2, 2) == Rational(1, 4));
  for (std::uint64_t y = 2; y <= 50; ++y) CHECK(sum_dln_smooth(1, y) + mertens_product_below(y + 1) == 1);
  std::vector<double> vals;
  for (unsigned k = 1; k <= 12; ++k) vals.push_back(to_double(sum_dln_smooth(k, 10)));
  for (unsigned k = 4; k + 2 <= 12; ++k) CHECK(vals[k + 1] < vals[k - 1]);
}

TEST_CASE("smooth d(L_n) sum against direct enumeration") {
  // All 7-smooth n with Omega(n) = 3, by brute force over n <= 7^3.
  Rational direct = 0;
  for (std::uint64_t n = 8; n <= 343; ++n) {
    const auto f = factorize(n);
    if (f.omega() == 3 && f.big_prime() <= 7) direct += l_density_exact(n);
  }
  CHECK(sum_dln_smooth(3, 7) == direct);
}

TEST_CASE("suite registry") {
  const auto& names = suite_names();
  CHECK(std::find(names.begin(), names.end(), "trichotomy") != names.end());
  CHECK(std::find(names.begin(), names.end(), "all") != names.end());
  CHECK_THROWS_AS(run_suite("no-such-suite"), DomainError);
  try {
    run_suite("no-such-suite");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("mu-table") != std::string::npos);
  }
}

TEST_CASE("suites are seeded and reproducible") {
  for (const char* name : {"genset", "mass", "lemma25", "additivity"}) {
    const auto a = run_suite(name, 5, 50);
    const auto b = run_suite(name, 5, 50, 4);
    CHECK(a.ok());
    CHECK(a.cases == 50);
    CHECK(a.seed == 5);
    CHECK(a.generator_version == kGeneratorVersion);
    CHECK(to_json(a, false) == to_json(b, false));
  }
}

TEST_CASE("bq-table suite reproduces all rows") {
  const auto r = run_suite("bq-table");
  CHECK(r.cases == 14);
  CHECK(r.passes == 14);
  CHECK(r.passed.size() == 14);
}

TEST_CASE("report json and csv") {
  VerificationReport r;
  r.suite = "demo";
  r.record(true, "a");
  r.record(false, "b", "x,\"y\"");
  CHECK(r.cases == 2);
  CHECK_FALSE(r.ok());
  const auto j = to_json(r, false);
  CHECK(j["failures"].size() == 1);
  CHECK_FALSE(j.contains("wall_time_s"));
  const auto csv = to_csv(r);
  CHECK(csv.rfind("suite,case_id,status,witness\n", 0) == 0);
  CHECK(csv.find("\"x,\"\"y\"\"\"") != std::string::npos);
}
