#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace pslab {

// Neumaier's variant of Kahan summation. The running error is carried in a
// separate compensation term; value() folds it in.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  CompensatedSum(double sum, double compensation) : sum_(sum), comp_(compensation) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    ++terms_;
  }

  // Merge rule: the other accumulator's leading sum is added as a term, its
  // compensation is added to ours directly. Merging in a fixed order is
  // deterministic.
  void merge(const CompensatedSum& other) {
    const std::size_t terms = terms_;
    add(other.sum_);
    comp_ += other.comp_;
    terms_ = terms + other.terms_;
  }

  double value() const { return sum_ + comp_; }
  double sum() const { return sum_; }
  double compensation() const { return comp_; }
  std::size_t terms() const { return terms_; }
  void set_terms(std::size_t t) { terms_ = t; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::size_t terms_ = 0;
};

// Pairwise summation; the result depends only on the order of `xs`.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace pslab
