#include "permcode/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "permcode/masks.hpp"
#include "permcode/rng.hpp"
#include "permcode/subset_rules.hpp"

namespace permcode {

namespace {

double log2_factorial(int n) {
  double s = 0.0;
  for (int i = 2; i <= n; ++i) s += std::log2(static_cast<double>(i));
  return s;
}

}  // namespace

double cycle_free_rate(int q) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  // log_q((q-1)!) / (q-1)
  return log2_factorial(q - 1) / ((q - 1) * std::log2(static_cast<double>(q)));
}

BetheRate bethe_rate_estimate(int q, int d_v) {
  if (q < 2 || d_v < 1) throw std::invalid_argument("bad ensemble parameters");
  BetheRate r;
  const double raw = (static_cast<double>(d_v) / q) * log2_factorial(q) -
                     (d_v - 1) * std::log2(static_cast<double>(q));
  r.bits_per_symbol = std::max(0.0, raw);
  r.fraction = r.bits_per_symbol / std::log2(static_cast<double>(q));
  return r;
}

double combinatorial_rate(const BigInt& codeword_count, int block_length, int q) {
  if (codeword_count < 1) throw std::invalid_argument("codeword count must be positive");
  if (block_length < 1 || q < 2) throw std::invalid_argument("bad rate parameters");
  const auto bits = msb(codeword_count);  // floor(log2 M)
  double log2_m;
  if (bits <= 900) {
    log2_m = std::log2(codeword_count.convert_to<double>());
  } else {
    const auto shift = bits - 52;
    log2_m = std::log2((codeword_count >> shift).convert_to<double>()) +
             static_cast<double>(shift);
  }
  return log2_m / (block_length * std::log2(static_cast<double>(q)));
}

namespace {

// Uniform subset of `others` of size extra, OR'ed onto base. Partial
// Fisher-Yates over a scratch array.
Mask random_subset_with(Mask base, std::vector<int>& scratch, int extra, Rng& rng) {
  const int n = static_cast<int>(scratch.size());
  Mask m = base;
  for (int i = 0; i < extra; ++i) {
    const int j = i + rng.below(n - i);
    std::swap(scratch[i], scratch[j]);
    m |= symbol_bit(scratch[i]);
  }
  return m;
}

class PopulationDE {
 public:
  PopulationDE(const EnsembleParams& p, double eps, std::uint64_t seed)
      : p_(p), eps_(eps), rng_(seed) {
    v2c_.resize(p.population_size);
    c2v_.resize(p.population_size);
    scratch_.q = p.q;
    scratch_.rows.resize(p.q);
    for (auto& m : v2c_) m = channel_sample();
  }

  // residual after one constraint + variable round
  double iterate() {
    constraint_round();
    variable_round();
    int non_singleton = 0;
    for (Mask m : v2c_)
      if (!is_singleton(m)) ++non_singleton;
    return static_cast<double>(non_singleton) / static_cast<double>(v2c_.size());
  }

 private:
  Mask channel_sample() {
    return rng_.unit() < eps_ ? full_mask(p_.q) : symbol_bit(1);
  }

  // uniform relabeling of symbols 2..q applied to a mask containing 1
  Mask relabel_fixing_truth(Mask m) {
    const int q = p_.q;
    others_.resize(q - 1);
    for (int s = 2; s <= q; ++s) others_[s - 2] = s;
    rng_.shuffle(others_.begin(), others_.end());
    Mask out = symbol_bit(1);
    for (int s = 2; s <= q; ++s)
      if (m & symbol_bit(s)) out |= symbol_bit(others_[s - 2]);
    return out;
  }

  void constraint_round() {
    const int q = p_.q;
    sigma_.resize(q);
    for (int i = 0; i < q; ++i) sigma_[i] = i + 1;
    for (int n = 0; n < p_.population_size; ++n) {
      rng_.shuffle(sigma_.begin(), sigma_.end());
      for (int i = 0; i < q - 1; ++i) {
        const Mask sample = v2c_[rng_.below(p_.population_size)];
        const int card = cardinality(sample);
        others_.clear();
        for (int s = 1; s <= q; ++s)
          if (s != sigma_[i]) others_.push_back(s);
        scratch_.rows[i] =
            random_subset_with(symbol_bit(sigma_[i]), others_, card - 1, rng_);
      }
      scratch_.rows[q - 1] = full_mask(q);
      const SubsetUpdateResult upd = constraint_update_subsets_trellis(scratch_);
      if (upd.contradiction)
        throw AnalysisError("hidden-truth sampler produced a contradiction");
      // record relative to sigma: map the outgoing edge's true symbol to 1
      const Mask out = upd.messages.rows[q - 1];
      const int truth = sigma_[q - 1];
      if (!(out & symbol_bit(truth)))
        throw AnalysisError("true symbol removed by constraint update");
      Mask rel = symbol_bit(1);
      int next = 2;
      for (int s = 1; s <= q; ++s) {
        if (s == truth) continue;
        if (out & symbol_bit(s)) rel |= symbol_bit(next);
        ++next;
      }
      c2v_[n] = rel;
    }
  }

  void variable_round() {
    for (int n = 0; n < p_.population_size; ++n) {
      Mask m = channel_sample();
      for (int k = 0; k < p_.d_v - 1; ++k)
        m &= relabel_fixing_truth(c2v_[rng_.below(p_.population_size)]);
      v2c_[n] = m;
    }
  }

  EnsembleParams p_;
  double eps_;
  Rng rng_;
  std::vector<Mask> v2c_, c2v_;
  std::vector<int> sigma_, others_;
  SubsetMatrix scratch_;
};

}  // namespace

bool de_converges(const EnsembleParams& params, double eps, std::uint64_t seed,
                  std::vector<double>* residual_trace) {
  if (params.q < 2 || params.q > 12 || params.d_v < 2)
    throw std::invalid_argument("ensemble out of range");
  if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("erasure probability out of range");
  PopulationDE de(params, eps, seed);
  std::vector<double> residuals;
  for (int t = 0; t < params.max_de_iters; ++t) {
    const double r = de.iterate();
    residuals.push_back(r);
    if (residual_trace) residual_trace->push_back(r);
    if (r < params.target_residual) return true;
    // plateau: a stable nonzero fixed point, stop early
    if (t >= 80 && r > 0.02) {
      const double before = residuals[t - 60];
      if (r > before * 0.999) return false;
    }
  }
  return false;
}

DEThreshold de_threshold(const EnsembleParams& params, std::uint64_t seed, int repeats) {
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  std::vector<double> thetas;
  for (int r = 0; r < repeats; ++r) {
    const std::uint64_t run_seed = derive_seed(seed, 0xde, r);
    double lo = 0.0, hi = 1.0;
    // a fully erased channel never converges (no anchors), eps=0 trivially does
    int step = 0;
    while (hi - lo > params.resolution) {
      const double mid = 0.5 * (lo + hi);
      if (de_converges(params, mid, derive_seed(run_seed, step)))
        lo = mid;
      else
        hi = mid;
      ++step;
    }
    thetas.push_back(0.5 * (lo + hi));
  }
  DEThreshold out;
  out.theta = 0.0;
  for (double t : thetas) out.theta += t;
  out.theta /= static_cast<double>(thetas.size());
  if (repeats == 1) {
    out.ci_lo = out.theta - params.resolution;
    out.ci_hi = out.theta + params.resolution;
  } else {
    out.ci_lo = *std::min_element(thetas.begin(), thetas.end());
    out.ci_hi = *std::max_element(thetas.begin(), thetas.end());
  }
  return out;
}

}  // namespace permcode
