#include "pslab/lsets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "pslab/constants.hpp"
#include "pslab/errors.hpp"
#include "pslab/mertens.hpp"

namespace pslab {

namespace {

const Factorizer& fz() { return default_factorizer(); }

void require_at_least_two(std::uint64_t n, const char* what) {
  if (n < 2) throw DomainError(std::string(what) + " needs integers >= 2, got " + std::to_string(n));
}

struct ProductTable {
  std::vector<std::uint64_t> primes;
  std::vector<Rational> prefix;  // prefix[i] = prod_{j < i} (1 - 1/primes[j])
};

const ProductTable& product_table() {
  static const ProductTable table = [] {
    ProductTable t;
    t.primes = simple_sieve(kExactDensityPrimeLimit);
    t.prefix.reserve(t.primes.size() + 1);
    Rational acc = 1;
    t.prefix.push_back(acc);
    for (std::uint64_t p : t.primes) {
      acc *= make_rational(p - 1, p);
      t.prefix.push_back(acc);
    }
    return t;
  }();
  return table;
}

// Best rational approximation r/q, q <= max_den, by continued fractions.
std::optional<std::pair<std::uint64_t, std::uint64_t>> small_fraction(double x, std::uint64_t max_den) {
  if (!(x >= 0.0) || x > 1e6) return std::nullopt;
  std::uint64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double whole = std::floor(rest);
    const auto a = static_cast<std::uint64_t>(whole);
    const std::uint64_t h2 = a * h1 + h0;
    const std::uint64_t k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2;
    k0 = k1; k1 = k2;
    const double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::fabs(approx - x) <= 1e-15 * std::max(1.0, x)) return std::pair{h1, k1};
    const double frac = rest - whole;
    if (frac <= 0.0) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

BigInt big_pow(std::uint64_t base, std::uint64_t exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

}  // namespace

bool is_l_multiple(std::uint64_t n, std::uint64_t a) {
  require_at_least_two(n, "is_l_multiple");
  require_at_least_two(a, "is_l_multiple");
  if (n % a != 0) return false;
  const std::uint64_t b = n / a;
  if (b == 1) return true;
  return fz().smallest_prime_factor(b) >= fz().largest_prime_factor(a);
}

Rational mertens_product_below(std::uint64_t bound) {
  if (bound > kExactDensityPrimeLimit + 1) {
    throw DomainError("exact Mertens product only for primes up to " + std::to_string(kExactDensityPrimeLimit));
  }
  const auto& t = product_table();
  const auto count = static_cast<std::size_t>(std::lower_bound(t.primes.begin(), t.primes.end(), bound) - t.primes.begin());
  return t.prefix[count];
}

Rational l_density_exact(std::uint64_t a) {
  require_at_least_two(a, "l_density");
  const std::uint64_t big = fz().largest_prime_factor(a);
  Rational d = mertens_product_below(big);
  d /= make_bigint(a);
  return d;
}

LSetDescriptor l_density(std::uint64_t a) {
  require_at_least_two(a, "l_density");
  LSetDescriptor out;
  out.a = a;
  out.fact = fz().factorize(a);
  const std::uint64_t big = out.fact.big_prime();
  if (big <= kExactDensityPrimeLimit) {
    out.density_exact = l_density_exact(a);
    out.density_float = to_double(*out.density_exact);
  } else {
    // prod_{p < P} (1 - 1/p) = mu_P / (e^gamma log P)
    const double p = static_cast<double>(big);
    out.density_float = mu(p).value / (constants::kExpEulerGamma * std::log(p)) / static_cast<double>(a);
  }
  return out;
}

Trichotomy trichotomy(std::uint64_t a, std::uint64_t b) {
  require_at_least_two(a, "trichotomy");
  require_at_least_two(b, "trichotomy");
  if (a == b) return Trichotomy::Equal;
  if (is_l_multiple(b, a)) return Trichotomy::FirstContainsSecond;
  if (is_l_multiple(a, b)) return Trichotomy::SecondContainsFirst;
  return Trichotomy::Disjoint;
}

std::string to_string(Trichotomy t) {
  switch (t) {
    case Trichotomy::Disjoint: return "disjoint";
    case Trichotomy::FirstContainsSecond: return "first-contains-second";
    case Trichotomy::SecondContainsFirst: return "second-contains-first";
    case Trichotomy::Equal: return "equal";
  }
  return "?";
}

CheckedSet check_set(std::span<const std::uint64_t> set) {
  CheckedSet out;
  out.elements.assign(set.begin(), set.end());
  for (std::uint64_t a : out.elements) require_at_least_two(a, "check_set");
  std::sort(out.elements.begin(), out.elements.end());
  out.elements.erase(std::unique(out.elements.begin(), out.elements.end()), out.elements.end());
  const auto& e = out.elements;
  out.primitive = true;
  out.l_primitive = true;
  for (std::size_t j = 1; j < e.size() && (out.primitive || out.l_primitive); ++j) {
    const std::uint64_t half = e[j] / 2;
    for (std::size_t i = 0; i < j && e[i] <= half; ++i) {
      if (e[j] % e[i] != 0) continue;
      out.primitive = false;
      if (is_l_multiple(e[j], e[i])) out.l_primitive = false;
    }
  }
  return out;
}

CheckedSet generating_set(std::span<const std::uint64_t> set) {
  const CheckedSet sorted = check_set(set);
  const auto& e = sorted.elements;
  std::vector<std::uint64_t> kept;
  for (std::size_t j = 0; j < e.size(); ++j) {
    bool covered = false;
    for (std::size_t i = 0; i < j && !covered; ++i) covered = e[j] % e[i] == 0 && is_l_multiple(e[j], e[i]);
    if (!covered) kept.push_back(e[j]);
  }
  return check_set(kept);
}

int compare_pow(std::uint64_t base, double exponent, std::uint64_t target) {
  if (base < 1 || target < 1) throw DomainError("compare_pow needs positive integers");
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) throw DomainError("compare_pow needs a finite exponent >= 0");
  if (const auto frac = small_fraction(exponent, 1000)) {
    const auto [num, den] = *frac;
    const BigInt lhs = big_pow(base, num);
    const BigInt rhs = big_pow(target, den);
    return cmp(lhs, rhs) < 0 ? -1 : (cmp(lhs, rhs) > 0 ? 1 : 0);
  }
  const double diff = exponent * std::log(static_cast<double>(base)) - std::log(static_cast<double>(target));
  if (std::fabs(diff) < 1e-12) {
    throw BoundaryAmbiguityError(std::to_string(base) + "^" + std::to_string(exponent) + " is within 1e-12 of " +
                                 std::to_string(target));
  }
  return diff < 0 ? -1 : 1;
}

CSetSpec make_cset_spec(std::uint64_t a, double v, std::uint64_t prime_cap) {
  require_at_least_two(a, "c_set");
  if (!(v > 0.0 && v < 1.0)) throw DomainError("c_set needs 0 < v < 1");
  const auto fact = fz().factorize(a);
  if (fact.is_prime()) throw DomainError("c_set needs composite a; " + std::to_string(a) + " is prime");
  CSetSpec spec;
  spec.a = a;
  spec.v = v;
  spec.window_lo = fz().largest_prime_factor(fact.star());
  const double root = std::sqrt(v);
  spec.window_hi = std::pow(static_cast<double>(spec.window_lo), 1.0 / root);
  std::uint64_t top = 0;
  if (prime_cap != 0 && static_cast<double>(prime_cap) < spec.window_hi) {
    spec.truncated = true;
    spec.prime_cap = prime_cap;
    top = prime_cap;
  } else if (!(spec.window_hi <= kCSetWindowCap)) {
    throw DomainError("C-set window end " + std::to_string(spec.window_hi) + " exceeds the supported 1e9");
  } else {
    top = static_cast<std::uint64_t>(std::ceil(spec.window_hi)) + 1;
  }
  // p < B^{1/sqrt v}  <=>  p^{sqrt v} < B
  for (std::uint64_t p : PrimeTable(std::max<std::uint64_t>(top, 2))) {
    if (p < spec.window_lo) continue;
    if (compare_pow(p, root, spec.window_lo) < 0) spec.window_primes.push_back(p);
  }
  return spec;
}

std::vector<std::uint64_t> c_set(const CSetSpec& spec, std::uint64_t bound) {
  if (bound < 1) throw DomainError("c_set needs bound >= 1");
  if (spec.truncated && bound > spec.prime_cap) throw DomainError("c_set bound exceeds the spec's prime cap");
  const auto& ps = spec.window_primes;
  // (value, index of the largest prime used); extending only by primes at or
  // after that index reaches every product exactly once.
  using Item = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(1, 0);
  std::vector<std::uint64_t> out;
  while (!heap.empty()) {
    const auto [c, from] = heap.top();
    heap.pop();
    out.push_back(c);
    for (std::size_t i = from; i < ps.size() && ps[i] <= bound / c; ++i) heap.emplace(c * ps[i], i);
  }
  return out;
}

Rational c_set_harmonic_exact(const CSetSpec& spec) {
  if (spec.truncated) throw DomainError("harmonic sum needs the full window");
  Rational h = 1;
  for (std::uint64_t p : spec.window_primes) h *= make_rational(p, p - 1);
  return h;
}

double c_set_harmonic(const CSetSpec& spec) { return to_double(c_set_harmonic_exact(spec)); }

namespace {

// D_v(n) by an ascending scan; beta_out receives p * (part of n below p) for
// the last qualifying p.
std::vector<std::uint64_t> scan_d_v(const Factorization& f, double v, std::uint64_t* beta_out) {
  std::vector<std::uint64_t> d;
  std::uint64_t partial = 1;
  std::uint64_t beta = 0;
  for (const auto& [p, e] : f.factors) {
    if (compare_pow(p, v, partial) >= 0) {
      d.push_back(p);
      beta = p * partial;
    }
    for (unsigned k = 0; k < e; ++k) partial *= p;
  }
  if (beta_out) *beta_out = beta;
  return d;
}

}  // namespace

std::vector<std::uint64_t> d_v_set(std::uint64_t n, double v) {
  require_at_least_two(n, "d_v_set");
  if (!(v > 0.0)) throw DomainError("d_v_set needs v > 0");
  auto d = scan_d_v(fz().factorize(n), v, nullptr);
  if (d.empty()) throw std::logic_error("D_v(n) is empty; the smallest prime always qualifies");
  return d;
}

std::uint64_t beta(std::uint64_t n, double v) {
  require_at_least_two(n, "beta");
  if (!(v > 0.0)) throw DomainError("beta needs v > 0");
  std::uint64_t b = 0;
  scan_d_v(fz().factorize(n), v, &b);
  if (b < 2 || !is_l_multiple(n, b)) {
    throw std::logic_error("beta(" + std::to_string(n) + ") is not an L-divisor");
  }
  return b;
}

}  // namespace pslab
