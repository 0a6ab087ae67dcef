#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "pslab/bounds.hpp"
#include "pslab/constants.hpp"
#include "pslab/errors.hpp"
#include "pslab/lsets.hpp"
#include "pslab/mertens.hpp"
#include "pslab/series.hpp"
#include "pslab/verify.hpp"

using namespace pslab;
using V = std::vector<std::uint64_t>;
using D = std::vector<double>;

TEST_CASE("b_q published table") {
  for (const auto& row : published_bq_table()) {
    const auto e = b_value(row.q);
    CHECK(std::abs(e.b_q - row.value) <= four_digit_tolerance(row.value));
  }
  CHECK(b_value(3).b_q == doctest::Approx(0.9006).epsilon(1e-4));
  CHECK(b_value(23).b_q == doctest::Approx(0.8232).epsilon(1e-4));
  CHECK(b_value(47).b_q == doctest::Approx(0.8090).epsilon(1e-4));
  CHECK_THROWS_AS(b_value(2), DomainError);
  CHECK_THROWS_AS(b_value(9), DomainError);
}

TEST_CASE("b_q stays below 0.901 for odd primes up to 10^4") {
  const auto table = b_table(10'000);
  CHECK(table.size() == 1228);
  double worst = 0.0;
  for (const auto& e : table) {
    worst = std::max(worst, e.b_q);
    CHECK(e.b_q < 1.0);
  }
  CHECK(worst < 0.901);
  CHECK(b_table(100)[5].b_q == b_value(17).b_q);
}

TEST_CASE("bound constants (mpmath oracle)") {
  const auto c = bound_constants();
  CHECK(c.C1 == doctest::Approx(0.546322741618).epsilon(1e-10));
  CHECK(c.C2 == doctest::Approx(0.251134975569).epsilon(1e-10));
  CHECK(c.inner_sum == doctest::Approx(0.390125772805).epsilon(1e-10));
  CHECK(c.final_bound > 1.594);
  CHECK(c.final_bound <= 1.595);
  CHECK(std::abs(c.ess_const - 1.39885100596735387) < 1e-14);
  CHECK(c.final_bound == doctest::Approx(final_bound_limit()));
}

TEST_CASE("final bound over K") {
  const auto c = bound_constants();
  CHECK(final_bound_at(2) == doctest::Approx(1.0 / (4.0 * std::log(4.0)) + 1.5 * c.C1 + 2.0 * c.C2).epsilon(1e-14));
  CHECK(final_bound_at(2) == doctest::Approx(1.502).epsilon(1e-3));
  CHECK(final_bound_sup() <= 1.595);
  CHECK(final_bound_sup() >= final_bound_at(10));
  CHECK_THROWS_AS(final_bound_at(1), DomainError);
}

TEST_CASE("mass lemma") {
  CHECK(mass_lemma_check(D{1}, D{0.5}, D{1}));
  CHECK(mass_lemma_check(D{1, 0.5}, D{0.3, 0.7}, D{0.5, 1.0}));
  CHECK(mass_lemma_check(D{}, D{}, D{}));
  CHECK_THROWS_AS(mass_lemma_check(D{0.5, 1}, D{0.1, 0.1}, D{1, 1}), PreconditionError);
  CHECK_THROWS_AS(mass_lemma_check(D{1}, D{2}, D{1}), PreconditionError);
  CHECK_THROWS_AS(mass_lemma_check(D{1}, D{-0.1}, D{1}), PreconditionError);
  CHECK_THROWS_AS(mass_lemma_check(D{1, 1}, D{0.1}, D{1, 1}), PreconditionError);
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const auto inst = generate_mass_instance(rng);
    CHECK(mass_lemma_check(inst.c, inst.d, inst.D));
  }
}

TEST_CASE("pi/4 partition sums") {
  CHECK(pi4_uniform_sum(1) == 1.0);
  CHECK(std::abs(pi4_uniform_sum(1'000'000) - constants::kQuarterPi) < 1e-5);
  CHECK_THROWS_AS(pi4_partition_sum(D{0.0, 0.6, 0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(pi4_partition_sum(D{0.1, 1.0}), DomainError);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    D part{0.0, 1.0};
    double prev = pi4_partition_sum(part);
    for (int step = 0; step < 30; ++step) {
      part.push_back(u(rng));
      std::sort(part.begin(), part.end());
      part.erase(std::unique(part.begin(), part.end()), part.end());
      const double cur = pi4_partition_sum(part);
      CHECK(cur <= prev + 1e-15);
      CHECK(cur >= constants::kQuarterPi);
      prev = cur;
    }
  }
}

TEST_CASE("lemma25 examples and generated instances") {
  const auto r = lemma25_check(check_set(V{4}), 2, 1.0);
  CHECK(r.holds);
  CHECK(r.lhs == doctest::Approx(f_sum(V{4})));
  CHECK(r.rhs == doctest::Approx(constants::kExpEulerGamma / mu(7).value * 0.25 / 2.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(0.2409).epsilon(1e-3));
  const auto empty = lemma25_check(check_set(V{}), 6, 0.5);
  CHECK(empty.holds);
  CHECK(empty.lhs == 0.0);
  CHECK(lemma25_check(check_set(V{12}), 2, 1.0).holds);
  CHECK_THROWS_AS(lemma25_check(check_set(V{6}), 2, 1.0), PreconditionError);  // 3^2 > 6
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const auto inst = generate_lemma25_instance(rng);
    CHECK(lemma25_check(inst.set, inst.n, inst.v).holds);
  }
}

TEST_CASE("prop32 examples and generated instances") {
  CHECK_THROWS_AS(prop32_check(check_set(V{12, 18}), 6, 0.9), PreconditionError);
  // 20 is not an L-multiple of 10 (2 < 5), so the left side is empty.
  const auto r = prop32_check(check_set(V{20}), 10, 0.9);
  CHECK(r.holds);
  CHECK(r.lhs == 0.0);
  CHECK_THROWS_AS(prop32_check(check_set(V{50}), 10, 0.9), PreconditionError);  // 5^1.9 < 50
  const auto s = prop32_check(check_set(V{170}), 10, 0.9);
  CHECK(s.holds);
  CHECK(s.lhs == doctest::Approx(to_double(l_density_exact(170))));
  CHECK(s.rhs == doctest::Approx(std::sqrt(0.9) * r_ratio(5) * to_double(l_density_exact(10))));
  Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    const auto inst = generate_prop32_instance(rng);
    const auto c = prop32_check(inst.set, inst.n, inst.v, 100'000);
    CHECK(c.holds);
    CHECK(c.collisions == 0);
  }
}

TEST_CASE("log p / log 2p comparison") {
  for (std::uint64_t q : {3, 5, 7, 11, 13, 17, 19, 23}) CHECK(logp2p_check(q));
  for (std::uint64_t q : {29, 31, 37, 41, 43, 47}) CHECK_FALSE(logp2p_check(q));
  for (std::uint64_t q : {53, 101, 997, 104'729}) CHECK_FALSE(logp2p_check(q));
  CHECK(b_value(3).b_q > std::log(3.0) / std::log(6.0));
}
