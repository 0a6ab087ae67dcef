#include "pslab/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pslab/errors.hpp"
#include "pslab/primes.hpp"
#include "pslab/summation.hpp"

namespace pslab {

namespace {

std::vector<std::uint64_t> sorted_copy(std::span<const std::uint64_t> set) {
  std::vector<std::uint64_t> v(set.begin(), set.end());
  std::sort(v.begin(), v.end());
  return v;
}

// B_{2j} / (2j)! for j = 1..8.
constexpr std::array<double, 8> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
};

constexpr int kZetaCutoff = 50;
constexpr double kZetaStop = 1e-30;

}  // namespace

double f_sum(std::span<const std::uint64_t> set) {
  CompensatedSum acc;
  for (std::uint64_t a : sorted_copy(set)) {
    if (a < 2) throw DomainError("f_sum needs elements >= 2, got " + std::to_string(a));
    const double x = static_cast<double>(a);
    acc.add(1.0 / (x * std::log(x)));
  }
  return acc.value();
}

double f_t_sum(std::span<const std::uint64_t> set, double t) {
  CompensatedSum acc;
  for (std::uint64_t a : sorted_copy(set)) {
    if (a < 1) throw DomainError("f_t_sum needs positive elements");
    acc.add(std::pow(static_cast<double>(a), -t));
  }
  return acc.value();
}

double zeta_minus_one(double s) {
  if (!(s > 1.0)) throw DomainError("zeta needs s > 1");
  const double n = kZetaCutoff;
  // Euler-Maclaurin tail from N, smallest terms first.
  double tail = 0.0;
  std::array<double, 8> corr{};
  double rising = s;  // s (s+1) ... (s+2j-2)
  double npow = std::pow(n, -s - 1.0);
  for (std::size_t j = 0; j < corr.size(); ++j) {
    corr[j] = kBernoulliOverFactorial[j] * rising * npow;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    npow /= n * n;
  }
  for (std::size_t j = corr.size(); j-- > 0;) tail += corr[j];
  tail += 0.5 * std::pow(n, -s);
  tail += std::pow(n, 1.0 - s) / (s - 1.0);
  double head = 0.0;
  for (int k = kZetaCutoff - 1; k >= 2; --k) head += std::pow(static_cast<double>(k), -s);
  return head + tail;
}

double zeta(double s) { return 1.0 + zeta_minus_one(s); }

SeriesValue prime_zeta(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("prime_zeta needs s > 1");
  SeriesValue out;
  CompensatedSum acc;
  std::uint64_t n = 1;
  for (;; ++n) {
    const double zm1 = zeta_minus_one(static_cast<double>(n) * s);
    if (zm1 < kZetaStop) break;
    const int mu = mobius(n);
    if (mu != 0) acc.add(mu * std::log1p(zm1) / static_cast<double>(n));
  }
  out.terms_used = n - 1;
  // |log zeta(ms)| <= zeta(ms) - 1 <= 3 * 2^{-ms} once ms is this large.
  const double ratio = std::pow(2.0, -s);
  out.tail_bound = 3.0 * std::pow(2.0, -static_cast<double>(n) * s) / ((1.0 - ratio) * static_cast<double>(n));
  out.tail_bound += 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(acc.value());
  out.value = acc.value();
  return out;
}

double tau_equation(double t) {
  const double p2 = prime_zeta(2.0 * t).value;
  return prime_zeta(t).value - 1.0 - std::sqrt(1.0 - p2);
}

SeriesValue solve_tau(double tol) {
  if (!(tol > 0.0)) throw DomainError("solve_tau needs tol > 0");
  double lo = 1.01;
  double hi = 2.0;
  double glo = tau_equation(lo);
  const double ghi = tau_equation(hi);
  if (!(glo > 0.0 && ghi < 0.0)) {
    throw std::logic_error("tau bracket [1.01, 2] shows no sign change; prime_zeta is faulty");
  }
  SeriesValue out;
  double mid = 0.5 * (lo + hi);
  double gmid = tau_equation(mid);
  std::uint64_t steps = 1;
  while (std::fabs(gmid) >= tol && hi - lo > 4.0 * std::numeric_limits<double>::epsilon()) {
    if ((gmid > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gmid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
    gmid = tau_equation(mid);
    ++steps;
  }
  if (std::fabs(gmid) >= tol) {
    throw DomainError("solve_tau cannot reach residual below " + std::to_string(std::fabs(gmid)));
  }
  out.value = mid;
  out.tail_bound = 0.5 * (hi - lo);
  out.terms_used = steps;
  out.note = "residual " + std::to_string(gmid);
  return out;
}

double f_t_semiprimes(double t) {
  const double p = prime_zeta(t).value;
  return 0.5 * (p * p + prime_zeta(2.0 * t).value);
}

FPrimeSplit f_prime_split(std::uint64_t bound, double tol) {
  if (bound < 2) throw DomainError("f_prime_split needs bound >= 2");
  if (!(tol > 0.0)) throw DomainError("f_prime_split needs tol > 0");
  FPrimeSplit out;
  out.bound = bound;
  const auto primes = PrimeTable(bound).primes();
  out.head_terms = primes.size();
  std::vector<double> logs(primes.size());
  CompensatedSum head;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    logs[i] = std::log(static_cast<double>(primes[i]));
    head.add(1.0 / (static_cast<double>(primes[i]) * logs[i]));
  }
  out.head = head.value();

  // sum_{p > X} p^{-t}, with the head summed smallest terms first.
  auto beyond = [&](double t) {
    double h = 0.0;
    for (std::size_t i = logs.size(); i-- > 0;) h += std::exp(-t * logs[i]);
    return prime_zeta(t).value - h;
  };

  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  constexpr unsigned kDepth = 30;
  const double qtol = tol * 1e-2;

  // [1, 2] through t = 1 + e^{-u}, u in [0, U].
  constexpr double kU = 32.0;
  double err1 = 0.0;
  const double near = Quad::integrate(
      [&](double u) {
        const double w = std::exp(-u);
        return beyond(1.0 + w) * w;
      },
      0.0, kU, kDepth, qtol, &err1);
  // P(t) <= log zeta(t) <= log(1 + 1/(t-1)) on the cut piece.
  const double cut = (kU + 2.0) * std::exp(-kU);

  // Here the integrand is below 1e-8 and at the noise floor of P(t), so
  // relative refinement cannot converge; a shallow rule is enough.
  double err2 = 0.0;
  const double mid = Quad::integrate(beyond, 2.0, 4.0, 3, qtol, &err2);

  // pi(x) < 1.25506 x / log x gives sum_{p > X} p^{-t} <= 1.25506 t X^{1-t} / ((t-1) log X);
  // integrated over t >= 4.
  const double lx = std::log(static_cast<double>(bound));
  const double far = 1.25506 * (4.0 / 3.0) * std::pow(static_cast<double>(bound), -3.0) / (lx * lx);

  out.remainder = near + mid;
  out.remainder_error = err1 + err2 + cut + far;
  return out;
}

SeriesValue f_prime_total(double tol, std::uint64_t bound) {
  if (!(tol >= kFPrimeBestTol)) {
    throw DomainError("f_prime_total: tolerance below achievable bound 1e-06");
  }
  const auto split = f_prime_split(bound, tol);
  SeriesValue out;
  out.value = split.head + split.remainder;
  out.tail_bound = split.remainder_error + 1e-12;
  out.terms_used = split.head_terms;
  return out;
}

SeriesValue f_nk_partial(unsigned k, std::uint64_t bound) {
  if (k < 1) throw DomainError("f_nk_partial needs k >= 1");
  SeriesValue out;
  out.tail_bound = std::numeric_limits<double>::infinity();
  if (k >= 64 || bound < (std::uint64_t{1} << k)) {
    out.note = "empty range: bound < 2^k";
    return out;
  }
  const auto omega = omega_sieve(bound);
  CompensatedSum acc;
  for (std::uint64_t n = 2; n <= bound; ++n) {
    if (omega[n] != k) continue;
    const double x = static_cast<double>(n);
    acc.add(1.0 / (x * std::log(x)));
  }
  out.value = acc.value();
  out.terms_used = acc.terms();
  return out;
}

}  // namespace pslab
