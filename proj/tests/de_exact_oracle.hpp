#pragma once

// Test-only oracle: deterministic density evolution over message-cardinality
// distributions, the exact closed-form counterpart of the population-dynamics
// sampler. Messages are modeled as uniform subsets of their cardinality
// containing the true symbol; transitions are computed by exhaustive
// enumeration, which is feasible for q <= 4.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "permcode/masks.hpp"
#include "permcode/subset_rules.hpp"

namespace permcode::testing {

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// all masks over 1..q of the given cardinality containing `anchor`
inline std::vector<Mask> masks_with(int q, int anchor, int card) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask{1} << q); ++m)
    if ((m & symbol_bit(anchor)) && cardinality(m) == card) out.push_back(m);
  return out;
}

class ExactCardinalityDE {
 public:
  ExactCardinalityDE(int q, int d_v) : q_(q), d_v_(d_v) {
    if (q < 2 || q > 4) throw std::invalid_argument("oracle is exhaustive, q <= 4 only");
  }

  // one constraint+variable round; p is indexed 1..q (p[0] unused)
  std::vector<double> iterate(const std::vector<double>& p, double eps) const {
    return variable_round(constraint_round(p), eps);
  }

  bool converges(double eps, int max_iters = 500, double target = 1e-4) const {
    std::vector<double> p(q_ + 1, 0.0);
    p[1] = 1 - eps;
    p[q_] = eps;
    double prev = 2.0;
    for (int t = 0; t < max_iters; ++t) {
      p = iterate(p, eps);
      double err = 0.0;
      for (int k = 2; k <= q_; ++k) err += p[k];
      if (err < target) return true;
      if (t > 80 && err > 0.02 && err > prev * 0.999) return false;
      prev = err;
    }
    return false;
  }

  double threshold(double resolution = 1e-3) const {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > resolution) {
      const double mid = 0.5 * (lo + hi);
      (converges(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  // outgoing-cardinality distribution of the trellis rule; incoming edge i
  // carries true symbol i+1, outgoing edge carries symbol q with a full row
  std::vector<double> constraint_round(const std::vector<double>& p) const {
    std::vector<double> out(q_ + 1, 0.0);
    SubsetMatrix rows{q_, std::vector<Mask>(q_, 0)};
    rows.rows[q_ - 1] = full_mask(q_);
    std::vector<std::pair<Mask, double>> opts[8];
    for (int i = 0; i < q_ - 1; ++i)
      for (int card = 1; card <= q_; ++card) {
        if (p[card] <= 0.0) continue;
        const double w = p[card] / binom(q_ - 1, card - 1);
        for (Mask m : masks_with(q_, i + 1, card)) opts[i].push_back({m, w});
      }
    enumerate_rows(rows, opts, 0, 1.0, out);
    double sum = 0.0;
    for (double x : out) sum += x;
    for (double& x : out) x /= sum;
    return out;
  }

  void enumerate_rows(SubsetMatrix& rows, std::vector<std::pair<Mask, double>>* opts,
                      int i, double weight, std::vector<double>& out) const {
    if (i == q_ - 1) {
      const auto upd = constraint_update_subsets_trellis(rows);
      if (upd.contradiction) throw std::logic_error("oracle contradiction");
      out[cardinality(upd.messages.rows[q_ - 1])] += weight;
      return;
    }
    for (const auto& [m, w] : opts[i]) {
      rows.rows[i] = m;
      enumerate_rows(rows, opts, i + 1, weight * w, out);
    }
  }

  // intersect the channel with d_v - 1 independent uniform messages anchored
  // at the true symbol 1
  std::vector<double> variable_round(const std::vector<double>& c, double eps) const {
    std::vector<double> out(q_ + 1, 0.0);
    std::vector<std::pair<Mask, double>> opts;
    for (int card = 1; card <= q_; ++card) {
      if (c[card] <= 0.0) continue;
      const double w = c[card] / binom(q_ - 1, card - 1);
      for (Mask m : masks_with(q_, 1, card)) opts.push_back({m, w});
    }
    intersect(opts, 0, full_mask(q_), 1.0, eps, out);
    double sum = 0.0;
    for (double x : out) sum += x;
    for (double& x : out) x /= sum;
    return out;
  }

  void intersect(const std::vector<std::pair<Mask, double>>& opts, int k, Mask acc,
                 double weight, double eps, std::vector<double>& out) const {
    if (k == d_v_ - 1) {
      out[1] += weight * (1 - eps);
      out[cardinality(acc)] += weight * eps;
      return;
    }
    for (const auto& [m, w] : opts) intersect(opts, k + 1, acc & m, weight * w, eps, out);
  }

  int q_;
  int d_v_;
};

}  // namespace permcode::testing
