#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pslab {

// rho on a uniform grid, stepped from x rho'(x) = -rho(x - 1): each cell adds
// -int rho(t-1)/t dt by 4-point Gauss-Legendre on a cubic interpolant of the
// delayed values. Interpolation stencils never straddle an integer, where rho
// has a derivative kink.
class DickmanTable {
 public:
  explicit DickmanTable(double x_max = 200.0, unsigned cells_per_unit = 1000);

  double x_max() const { return x_max_; }
  double step() const { return h_; }
  // rho(x) for 0 <= x <= x_max; 0 beyond, where rho < 1/Gamma(x+1) underflows.
  double rho(double x) const;
  // int_0^x rho, exact on each cell for the cubic interpolant.
  double integral(double x) const;
  // int_0^x_max rho; total_tail_bound() bounds the rest.
  double total_integral() const { return cumulative_.back(); }
  double total_tail_bound() const;

 private:
  double interpolate(std::size_t cell, double x) const;

  double x_max_;
  unsigned n_;
  double h_;
  std::vector<double> values_;      // rho(i h)
  std::vector<double> cumulative_;  // int_0^{i h} rho
};

const DickmanTable& default_dickman_table();

double dickman_rho(double x);
double dickman_integral(double x);

// Largest |rho_h - rho_{h/2}| over the integer points 1..20.
double dickman_richardson_gap();

struct DickmanStatistic {
  double statistic = 0.0;    // mean of |D_v(n)| / log log n
  double theoretical = 0.0;  // e^{-gamma} int_0^v rho
  std::uint64_t samples = 0;
};

// Requires every n >= 16. The mean is a pairwise sum in sample order, so the
// thread count does not change it.
DickmanStatistic dickman_statistic(std::span<const std::uint64_t> sample, double v, unsigned threads = 1);

}  // namespace pslab
