#include "pslab/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "pslab/errors.hpp"
#include "pslab/parallel.hpp"

namespace pslab {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t odd_bits(std::uint64_t limit) { return (limit + 1) / 2; }

// Clears composite odd numbers among bit indices [lo, hi) of `words`, where
// words[0] holds bit index `word_base * 64`.
void sieve_odd_range(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint64_t> base,
                     std::uint64_t* words, std::uint64_t word_base) {
  const std::uint64_t base_bit = word_base * 64;
  const std::uint64_t hi_num = 2 * hi - 1;
  for (std::uint64_t p : base) {
    if (p == 2) continue;
    if (p * p > hi_num) break;
    const std::uint64_t lo_num = 2 * lo + 1;
    std::uint64_t m = std::max(p * p, (lo_num + p - 1) / p * p);
    if (m % 2 == 0) m += p;
    for (std::uint64_t i = (m - 1) / 2; i < hi; i += p) {
      const std::uint64_t b = i - base_bit;
      words[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
    }
  }
  if (lo == 0) words[0] &= ~std::uint64_t{1};  // 1 is not prime
}

}  // namespace

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

PrimeTable::PrimeTable(std::uint64_t limit, SieveOptions options) : limit_(limit) {
  if (limit < 2) throw DomainError("sieve limit must be >= 2, got " + std::to_string(limit));
  const std::uint64_t bits = odd_bits(limit);
  const std::uint64_t nwords = (bits + 63) / 64;
  words_.assign(nwords, ~std::uint64_t{0});
  const auto base = simple_sieve(isqrt(limit));

  const std::uint64_t seg_words = std::max<std::uint64_t>(1, options.segment_bytes / 8);
  const std::uint64_t segments = (nwords + seg_words - 1) / seg_words;
  parallel_for(segments, options.threads, [&](std::size_t s) {
    const std::uint64_t w0 = s * seg_words;
    const std::uint64_t w1 = std::min(nwords, w0 + seg_words);
    const std::uint64_t lo = w0 * 64;
    const std::uint64_t hi = std::min(bits, w1 * 64);
    sieve_odd_range(lo, hi, base, words_.data() + w0, w0);
  });
  if (bits % 64 != 0) words_.back() &= (std::uint64_t{1} << (bits % 64)) - 1;

  count_ = 1;  // the prime 2
  for (auto w : words_) count_ += static_cast<std::uint64_t>(std::popcount(w));
}

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> words)
    : limit_(limit), words_(std::move(words)) {
  count_ = 1;
  for (auto w : words_) count_ += static_cast<std::uint64_t>(std::popcount(w));
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n == 2) return true;
  if (n < 2 || n % 2 == 0 || n > limit_) return false;
  const std::uint64_t i = n / 2;
  return (words_[i >> 6] >> (i & 63)) & 1;
}

std::uint64_t PrimeTable::next_prime_after(std::uint64_t n) const {
  // Smallest prime > n, or 0 if none <= limit.
  if (n < 2) return 2;
  std::uint64_t i = (n + 1) / 2;  // bit index of first odd number > n
  const std::uint64_t bits = odd_bits(limit_);
  while (i < bits) {
    const std::uint64_t w = words_[i >> 6] >> (i & 63);
    if (w != 0) {
      i += static_cast<std::uint64_t>(std::countr_zero(w));
      return i < bits ? 2 * i + 1 : 0;
    }
    i = (i | 63) + 1;
  }
  return 0;
}

PrimeTable::const_iterator& PrimeTable::const_iterator::operator++() {
  value_ = table_->next_prime_after(value_);
  return *this;
}

PrimeTable::const_iterator PrimeTable::begin() const { return const_iterator(this, 2); }

std::vector<std::uint64_t> PrimeTable::primes() const {
  std::vector<std::uint64_t> out;
  out.reserve(count_);
  out.push_back(2);
  for (std::uint64_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t w = words_[wi];
    while (w != 0) {
      const auto b = static_cast<std::uint64_t>(std::countr_zero(w));
      out.push_back(2 * (wi * 64 + b) + 1);
      w &= w - 1;
    }
  }
  return out;
}

namespace {

template <class T>
void put_le(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) throw IntegrityError("truncated prime bitset dump");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

void PrimeTable::write(std::ostream& out) const {
  out.write("PSLB", 4);
  put_le<std::uint32_t>(out, kDumpVersion);
  put_le<std::uint64_t>(out, limit_);
  for (auto w : words_) put_le<std::uint64_t>(out, w);
}

PrimeTable PrimeTable::read(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "PSLB", 4) != 0) throw IntegrityError("bad magic in prime bitset dump");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kDumpVersion) throw IntegrityError("unsupported prime bitset version " + std::to_string(version));
  const auto limit = get_le<std::uint64_t>(in);
  if (limit < 2) throw IntegrityError("prime bitset limit < 2");
  const std::uint64_t bits = odd_bits(limit);
  std::vector<std::uint64_t> words((bits + 63) / 64);
  for (auto& w : words) w = get_le<std::uint64_t>(in);
  if (in.peek() != std::char_traits<char>::eof()) throw IntegrityError("trailing bytes after prime bitset");
  if (bits % 64 != 0 && (words.back() >> (bits % 64)) != 0) throw IntegrityError("bits set beyond limit");
  if (words[0] & 1) throw IntegrityError("bit for 1 is set");
  return PrimeTable(limit, std::move(words));
}

PrimeTable sieve_primes(std::uint64_t limit, SieveOptions options) { return PrimeTable(limit, options); }

PrimeStream::PrimeStream(std::uint64_t start, std::uint64_t segment_span)
    : seg_lo_(std::max<std::uint64_t>(start, 2)), span_(std::max<std::uint64_t>(segment_span, 1024)) {}

void PrimeStream::refill() {
  buffer_.clear();
  pos_ = 0;
  while (buffer_.empty()) {
    const std::uint64_t lo = seg_lo_;
    const std::uint64_t hi = lo + span_;  // exclusive
    const std::uint64_t need = isqrt(hi) + 1;
    if (need > base_limit_) {
      base_limit_ = std::max(need, 2 * base_limit_);
      base_ = simple_sieve(base_limit_);
    }
    std::vector<bool> composite(hi - lo, false);
    for (std::uint64_t p : base_) {
      if (p * p >= hi) break;
      std::uint64_t m = std::max(p * p, (lo + p - 1) / p * p);
      for (; m < hi; m += p) composite[m - lo] = true;
    }
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n) {
      if (!composite[n - lo]) buffer_.push_back(n);
    }
    seg_lo_ = hi;
  }
}

std::uint64_t PrimeStream::next() {
  if (pos_ >= buffer_.size()) refill();
  return buffer_[pos_++];
}

void PrimeStream::take(std::size_t count, std::vector<std::uint64_t>& out) {
  out.reserve(out.size() + count);
  while (count > 0) {
    if (pos_ >= buffer_.size()) refill();
    const std::size_t n = std::min(count, buffer_.size() - pos_);
    out.insert(out.end(), buffer_.begin() + static_cast<std::ptrdiff_t>(pos_),
               buffer_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    count -= n;
  }
}

unsigned Factorization::omega() const {
  unsigned total = 0;
  for (const auto& f : factors) total += f.second;
  return total;
}

Factorizer::Factorizer(std::uint64_t spf_limit) : spf_limit_(std::max<std::uint64_t>(spf_limit, 4)) {
  if (spf_limit_ > 0xFFFFFFFFull) throw DomainError("SPF table limit must fit in 32 bits");
  spf_.assign(spf_limit_ + 1, 0);
  for (std::uint64_t i = 2; i <= spf_limit_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes_) {
      const std::uint64_t m = static_cast<std::uint64_t>(p) * i;
      if (p > spf_[i] || m > spf_limit_) break;
      spf_[m] = p;
    }
  }
}

std::uint64_t Factorizer::max_factorable() const { return spf_limit_ * spf_limit_; }

std::uint64_t Factorizer::smallest_prime_factor(std::uint64_t n) const {
  if (n < 2) throw DomainError("smallest prime factor needs n >= 2, got " + std::to_string(n));
  if (n <= spf_limit_) return spf_[n];
  for (std::uint32_t p : primes_) {
    const std::uint64_t pp = p;
    if (pp * pp > n) return n;
    if (n % pp == 0) return pp;
  }
  if (n > max_factorable()) throw DomainError("n = " + std::to_string(n) + " exceeds factorization range");
  return n;
}

std::uint64_t Factorizer::largest_prime_factor(std::uint64_t n) const { return factorize(n).big_prime(); }

Factorization Factorizer::factorize(std::uint64_t n) const {
  if (n < 2) throw DomainError("factorize needs n >= 2, got " + std::to_string(n));
  Factorization f;
  f.n = n;
  auto push = [&f](std::uint64_t p) {
    if (!f.factors.empty() && f.factors.back().first == p) {
      ++f.factors.back().second;
    } else {
      f.factors.emplace_back(p, 1u);
    }
  };
  std::uint64_t m = n;
  if (m > spf_limit_) {
    if (m > max_factorable()) throw DomainError("n = " + std::to_string(n) + " exceeds factorization range");
    for (std::uint32_t p : primes_) {
      const std::uint64_t pp = p;
      if (pp * pp > m || m <= spf_limit_) break;
      while (m % pp == 0) {
        push(pp);
        m /= pp;
      }
    }
    if (m > spf_limit_) {
      push(m);  // remaining cofactor has no factor below its square root
      m = 1;
    }
  }
  while (m > 1) {
    const std::uint64_t p = spf_[m];
    push(p);
    m /= p;
  }
  return f;
}

const Factorizer& default_factorizer() {
  static const Factorizer instance(std::uint64_t{1} << 22);
  return instance;
}

Factorization factorize(std::uint64_t n) { return default_factorizer().factorize(n); }

std::vector<std::uint8_t> omega_sieve(std::uint64_t limit) {
  if (limit < 2) throw DomainError("omega_sieve limit must be >= 2, got " + std::to_string(limit));
  std::vector<std::uint8_t> omega(limit + 1, 0);
  const PrimeTable table(limit);
  for (std::uint64_t p : table) {
    for (std::uint64_t pk = p; pk <= limit; pk *= p) {
      for (std::uint64_t m = pk; m <= limit; m += pk) ++omega[m];
      if (pk > limit / p) break;
    }
  }
  return omega;
}

int mobius(std::uint64_t n) {
  if (n == 0) throw DomainError("mobius(0) is undefined");
  if (n == 1) return 1;
  const auto f = factorize(n);
  for (const auto& pe : f.factors) {
    if (pe.second > 1) return 0;
  }
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace pslab
