#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <span>
#include <utility>
#include <vector>

namespace pslab {

struct SieveOptions {
  // Bytes of bitset sieved per segment; 256 KiB keeps a segment in L2.
  std::size_t segment_bytes = 256 * 1024;
  unsigned threads = 1;
};

// Primality of every n <= limit, stored one bit per odd number
// (bit i <-> 2i+1) in little-endian 64-bit words. Immutable once built.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit, SieveOptions options = {});

  std::uint64_t limit() const { return limit_; }
  std::uint64_t count() const { return count_; }
  bool is_prime(std::uint64_t n) const;
  std::span<const std::uint64_t> words() const { return words_; }

  std::vector<std::uint64_t> primes() const;

  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = std::uint64_t;
    using difference_type = std::ptrdiff_t;
    using pointer = const std::uint64_t*;
    using reference = std::uint64_t;

    const_iterator() = default;
    std::uint64_t operator*() const { return value_; }
    const_iterator& operator++();
    const_iterator operator++(int) {
      auto old = *this;
      ++*this;
      return old;
    }
    bool operator==(const const_iterator& o) const { return value_ == o.value_; }

   private:
    friend class PrimeTable;
    const_iterator(const PrimeTable* table, std::uint64_t value) : table_(table), value_(value) {}
    const PrimeTable* table_ = nullptr;
    std::uint64_t value_ = 0;  // 0 marks end
  };

  const_iterator begin() const;
  const_iterator end() const { return const_iterator(this, 0); }

  // Binary dump: magic "PSLB", version u32, limit u64, then the words,
  // all little-endian.
  void write(std::ostream& out) const;
  static PrimeTable read(std::istream& in);

  static constexpr std::uint32_t kDumpVersion = 1;

 private:
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> words);
  std::uint64_t next_prime_after(std::uint64_t n) const;

  std::uint64_t limit_ = 0;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

PrimeTable sieve_primes(std::uint64_t limit, SieveOptions options = {});

// Primes p <= limit by a plain (unsegmented) sieve; used for base primes.
std::vector<std::uint64_t> simple_sieve(std::uint64_t limit);

// Yields primes in increasing order starting from the first prime >= start,
// sieving fixed-size segments on demand. Memory stays O(segment).
class PrimeStream {
 public:
  explicit PrimeStream(std::uint64_t start = 2, std::uint64_t segment_span = std::uint64_t{1} << 22);
  std::uint64_t next();
  // Appends the next `count` primes to out.
  void take(std::size_t count, std::vector<std::uint64_t>& out);

 private:
  void refill();

  std::uint64_t seg_lo_;
  std::uint64_t span_;
  std::vector<std::uint64_t> base_;
  std::uint64_t base_limit_ = 0;
  std::vector<std::uint64_t> buffer_;
  std::size_t pos_ = 0;
};

struct Factorization {
  std::uint64_t n = 0;
  std::vector<std::pair<std::uint64_t, unsigned>> factors;  // increasing primes

  std::uint64_t big_prime() const { return factors.back().first; }    // P(n)
  std::uint64_t small_prime() const { return factors.front().first; } // p(n)
  unsigned omega() const;                                             // Omega(n)
  std::uint64_t star() const { return n / big_prime(); }              // n / P(n)
  bool is_prime() const { return factors.size() == 1 && factors.front().second == 1; }
};

// Smallest-prime-factor table up to spf_limit, trial division by its primes
// above that. Numbers beyond spf_limit^2 are rejected.
class Factorizer {
 public:
  explicit Factorizer(std::uint64_t spf_limit);

  Factorization factorize(std::uint64_t n) const;
  std::uint64_t smallest_prime_factor(std::uint64_t n) const;
  std::uint64_t largest_prime_factor(std::uint64_t n) const;
  std::uint64_t spf_limit() const { return spf_limit_; }
  std::uint64_t max_factorable() const;
  std::span<const std::uint32_t> primes() const { return primes_; }

 private:
  std::uint64_t spf_limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

// Process-wide factorizer (SPF table to 2^22), built on first use.
const Factorizer& default_factorizer();

Factorization factorize(std::uint64_t n);

// Omega(n) for every n <= limit in one pass over prime powers. Entries 0 and 1
// are 0.
std::vector<std::uint8_t> omega_sieve(std::uint64_t limit);

// Moebius function for n >= 1.
int mobius(std::uint64_t n);

bool is_prime_u64(std::uint64_t n);

}  // namespace pslab
