#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace pslab {

using Rational = mpq_class;
using BigInt = mpz_class;

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t),
              "GMP bridging assumes an LP64 platform");

inline BigInt make_bigint(std::uint64_t v) { return BigInt{static_cast<unsigned long>(v)}; }

inline Rational make_rational(std::uint64_t num, std::uint64_t den) {
  Rational r{make_bigint(num), make_bigint(den)};
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace pslab
