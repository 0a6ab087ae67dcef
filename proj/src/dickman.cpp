#include "pslab/dickman.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pslab/constants.hpp"
#include "pslab/errors.hpp"
#include "pslab/lsets.hpp"
#include "pslab/parallel.hpp"
#include "pslab/summation.hpp"

namespace pslab {

namespace {

// Gauss-Legendre nodes and weights on [0, 1].
constexpr std::array<double, 4> kNodes = {
    0.0694318442029737123880267555535953,
    0.3300094782075718675986671204483777,
    0.6699905217924281324013328795516223,
    0.9305681557970262876119732444464048,
};
constexpr std::array<double, 4> kWeights = {
    0.1739274225687269286865319746109997,
    0.3260725774312730713134680253890003,
    0.3260725774312730713134680253890003,
    0.1739274225687269286865319746109997,
};

}  // namespace

DickmanTable::DickmanTable(double x_max, unsigned cells_per_unit)
    : x_max_(x_max), n_(cells_per_unit), h_(1.0 / cells_per_unit) {
  if (!(x_max >= 1.0) || cells_per_unit < 4) throw DomainError("DickmanTable needs x_max >= 1, >= 4 cells per unit");
  const auto cells = static_cast<std::size_t>(std::ceil(x_max * n_));
  x_max_ = static_cast<double>(cells) * h_;
  values_.assign(cells + 1, 1.0);
  for (std::size_t i = n_ + 1; i <= cells; ++i) {
    // int over cell [x_{i-1}, x_i] of rho(t-1)/t; t-1 runs over cell i-1-n.
    const std::size_t delayed = i - 1 - n_;
    double s = 0.0;
    for (std::size_t k = 0; k < kNodes.size(); ++k) {
      const double t = (static_cast<double>(i - 1) + kNodes[k]) * h_;
      s += kWeights[k] * interpolate(delayed, t - 1.0) / t;
    }
    values_[i] = values_[i - 1] - s * h_;
  }
  cumulative_.assign(cells + 1, 0.0);
  CompensatedSum acc;
  for (std::size_t i = 1; i <= cells; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < kNodes.size(); ++k) {
      s += kWeights[k] * interpolate(i - 1, (static_cast<double>(i - 1) + kNodes[k]) * h_);
    }
    acc.add(s * h_);
    cumulative_[i] = acc.value();
  }
}

double DickmanTable::interpolate(std::size_t cell, double x) const {
  // Four grid points around the cell, kept inside its unit interval.
  const std::size_t unit_lo = cell / n_ * n_;
  const std::size_t unit_hi = std::min(unit_lo + n_, values_.size() - 1);
  std::size_t s = cell > unit_lo ? cell - 1 : unit_lo;
  if (s + 3 > unit_hi) s = unit_hi - 3;
  double out = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    double w = 1.0;
    const double xj = static_cast<double>(s + j) * h_;
    for (std::size_t m = 0; m < 4; ++m) {
      if (m == j) continue;
      const double xm = static_cast<double>(s + m) * h_;
      w *= (x - xm) / (xj - xm);
    }
    out += w * values_[s + j];
  }
  return out;
}

double DickmanTable::rho(double x) const {
  if (!(x >= 0.0)) throw DomainError("rho needs x >= 0");
  if (x <= 1.0) return 1.0;
  if (x > x_max_) return 0.0;
  const auto cell = std::min(static_cast<std::size_t>(x / h_), values_.size() - 2);
  return interpolate(cell, x);
}

double DickmanTable::integral(double x) const {
  if (!(x >= 0.0)) throw DomainError("rho integral needs x >= 0");
  if (x <= 1.0) return x;
  if (x >= x_max_) return total_integral();
  const auto cell = std::min(static_cast<std::size_t>(x / h_), values_.size() - 2);
  const double a = static_cast<double>(cell) * h_;
  const double len = x - a;
  double s = 0.0;
  for (std::size_t k = 0; k < kNodes.size(); ++k) s += kWeights[k] * interpolate(cell, a + kNodes[k] * len);
  return cumulative_[cell] + s * len;
}

double DickmanTable::total_tail_bound() const {
  // rho(x) <= 1/Gamma(x+1), and the integral past x_max is below twice the
  // first term.
  return 2.0 * std::exp(-std::lgamma(x_max_ + 1.0));
}

const DickmanTable& default_dickman_table() {
  static const DickmanTable table;
  return table;
}

double dickman_rho(double x) { return default_dickman_table().rho(x); }

double dickman_integral(double x) { return default_dickman_table().integral(x); }

double dickman_richardson_gap() {
  const DickmanTable coarse(21.0, 1000);
  const DickmanTable fine(21.0, 2000);
  double gap = 0.0;
  for (int x = 1; x <= 20; ++x) gap = std::max(gap, std::fabs(coarse.rho(x) - fine.rho(x)));
  return gap;
}

DickmanStatistic dickman_statistic(std::span<const std::uint64_t> sample, double v, unsigned threads) {
  if (!(v > 0.0)) throw DomainError("dickman_statistic needs v > 0");
  for (std::uint64_t n : sample) {
    if (n < 16) throw DomainError("dickman_statistic needs n >= 16, got " + std::to_string(n));
  }
  std::vector<double> terms(sample.size());
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (sample.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t hi = std::min(sample.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < hi; ++i) {
      const double n = static_cast<double>(sample[i]);
      terms[i] = static_cast<double>(d_v_set(sample[i], v).size()) / std::log(std::log(n));
    }
  });
  DickmanStatistic out;
  out.samples = sample.size();
  out.statistic = sample.empty() ? 0.0 : pairwise_sum(terms) / static_cast<double>(sample.size());
  out.theoretical = constants::kExpMinusEulerGamma * dickman_integral(v);
  return out;
}

}  // namespace pslab
