#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <vector>

#include "pslab/errors.hpp"
#include "pslab/primes.hpp"

using namespace pslab;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

unsigned brute_omega(std::uint64_t n) {
  unsigned k = 0;
  for (std::uint64_t d = 2; d <= n; ++d) {
    while (n % d == 0) {
      n /= d;
      ++k;
    }
  }
  return k;
}

}  // namespace

TEST_CASE("sieve small limits") {
  const PrimeTable t(10);
  CHECK(t.count() == 4);
  CHECK(t.primes() == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(PrimeTable(100).count() == 25);
  CHECK(PrimeTable(2).primes() == std::vector<std::uint64_t>{2});
  CHECK_THROWS_AS(PrimeTable(1), DomainError);
}

TEST_CASE("sieve counts match trial division up to 10^4") {
  const PrimeTable t(10'000);
  std::uint64_t count = 0;
  for (std::uint64_t n = 0; n <= 10'000; ++n) {
    const bool expect = trial_division_prime(n);
    count += expect;
    if (t.is_prime(n) != expect) FAIL("membership differs at n=" << n);
  }
  CHECK(t.count() == count);
  CHECK(count == 1229);
}

TEST_CASE("pi(10^6) from the segmented sieve and a plain sieve") {
  const PrimeTable t(1'000'000);
  CHECK(t.count() == 78498);
  CHECK(simple_sieve(1'000'000).size() == 78498);
}

TEST_CASE("segment size and threads do not change the sieve") {
  SieveOptions tiny;
  tiny.segment_bytes = 64;
  SieveOptions threaded;
  threaded.threads = 4;
  const PrimeTable a(200'003);
  const PrimeTable b(200'003, tiny);
  const PrimeTable c(200'003, threaded);
  CHECK(std::equal(a.words().begin(), a.words().end(), b.words().begin(), b.words().end()));
  CHECK(std::equal(a.words().begin(), a.words().end(), c.words().begin(), c.words().end()));
}

TEST_CASE("iterator and stream agree with the table") {
  const PrimeTable t(50'000);
  std::vector<std::uint64_t> via_iter(t.begin(), t.end());
  CHECK(via_iter == t.primes());
  PrimeStream s(2, 1 << 10);
  std::vector<std::uint64_t> streamed;
  s.take(via_iter.size(), streamed);
  CHECK(streamed == via_iter);
  PrimeStream from_mid(1000);
  CHECK(from_mid.next() == 1009);
}

TEST_CASE("dump round trip and corruption") {
  const PrimeTable t(12'345);
  std::stringstream ss;
  t.write(ss);
  const auto back = PrimeTable::read(ss);
  CHECK(back.limit() == t.limit());
  CHECK(back.primes() == t.primes());
  std::string bytes = ss.str();
  bytes[0] = 'X';
  std::stringstream bad(bytes);
  CHECK_THROWS(PrimeTable::read(bad));
}

TEST_CASE("factorize examples") {
  const auto f12 = factorize(12);
  CHECK(f12.factors == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 1}});
  CHECK(f12.big_prime() == 3);
  CHECK(f12.small_prime() == 2);
  CHECK(f12.omega() == 3);
  CHECK(f12.star() == 4);
  const auto f97 = factorize(97);
  CHECK(f97.is_prime());
  CHECK(f97.star() == 1);
  const auto f210 = factorize(210);
  CHECK(f210.omega() == 4);
  CHECK(f210.star() == 30);
  CHECK_THROWS_AS(factorize(1), DomainError);
  CHECK_THROWS_AS(factorize(0), DomainError);
}

TEST_CASE("factorize beyond the SPF table") {
  const std::uint64_t big = 999'983ULL * 1'000'003ULL;
  const auto f = factorize(big);
  CHECK(f.factors == std::vector<std::pair<std::uint64_t, unsigned>>{{999'983, 1}, {1'000'003, 1}});
  CHECK(factorize(4'194'301ULL * 4'194'301ULL).omega() == 2);
  CHECK_THROWS_AS(factorize(default_factorizer().max_factorable() + 1), DomainError);
}

TEST_CASE("factorize reconstructs n up to 10^5") {
  for (std::uint64_t n = 2; n <= 100'000; ++n) {
    const auto f = factorize(n);
    std::uint64_t prod = 1;
    std::uint64_t prev = 0;
    for (const auto& [p, e] : f.factors) {
      if (p <= prev || !trial_division_prime(p)) FAIL("bad factor list for " << n);
      prev = p;
      for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    if (prod != n) FAIL("product mismatch for " << n);
  }
}

TEST_CASE("omega sieve") {
  const auto w8 = omega_sieve(8);
  CHECK(std::vector<std::uint8_t>(w8.begin() + 2, w8.end()) == std::vector<std::uint8_t>{1, 1, 2, 1, 2, 1, 3});
  CHECK(omega_sieve(64)[64] == 6);
  const auto w100 = omega_sieve(100);
  CHECK(std::count(w100.begin() + 2, w100.end(), 2) == 34);
  CHECK_THROWS_AS(omega_sieve(1), DomainError);

  const auto w = omega_sieve(100'000);
  for (std::uint64_t n = 2; n <= 100'000; ++n) {
    if (w[n] != factorize(n).omega()) FAIL("omega differs at " << n);
  }
  for (std::uint64_t n = 2; n <= 2000; ++n) {
    if (w[n] != brute_omega(n)) FAIL("brute omega differs at " << n);
  }
}

TEST_CASE("mobius and primality") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(2) == -1);
  CHECK(mobius(4) == 0);
  CHECK(mobius(30) == -1);
  CHECK(mobius(210) == 1);
  CHECK(is_prime_u64(18'446'744'073'709'551'557ULL));
  CHECK_FALSE(is_prime_u64(3'215'031'751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  for (std::uint64_t n = 0; n < 5000; ++n) {
    if (is_prime_u64(n) != trial_division_prime(n)) FAIL("is_prime_u64 differs at " << n);
  }
}
