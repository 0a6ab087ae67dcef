#pragma once

// All transcendental constants used by the toolkit live here.

namespace pslab::constants {

// 30 significant digits each.
inline constexpr const char* kEulerGammaDigits = "0.577215664901532860606512090082";
inline constexpr double kEulerGamma = 0.577215664901532860606512090082;
inline constexpr double kExpEulerGamma = 1.78107241799019798523650410311;
inline constexpr double kExpMinusEulerGamma = 0.561459483566885169824143214791;
inline constexpr double kPi = 3.14159265358979323846264338328;
inline constexpr double kQuarterPi = 0.785398163397448309615660845820;
inline constexpr double kLn2 = 0.693147180559945309417232121458;

// Upper end of the range on which mu_x < 1 was established by direct
// computation over the first 10^8 odd primes.
inline constexpr double kMertensVerifiedRange = 2e9;

// Rosser-Schoenfeld: the lower envelope 1 - 1/(2 log^2 x) holds for x > 285.
inline constexpr double kRosserSchoenfeldLower = 285.0;

// pi(x) < kPrimeCountingConstant * x / log x for x > 1.
inline constexpr double kPrimeCountingConstant = 1.25506;

}  // namespace pslab::constants
