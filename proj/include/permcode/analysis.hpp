#pragma once

#include <cstdint>
#include <vector>

#include "permcode/interval_coder.hpp"  // BigInt

namespace permcode {

struct AnalysisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rate of the infinite constraint tree, as a base-q fraction:
// log_q((q-1)!) / (q-1).
double cycle_free_rate(int q);

struct BetheRate {
  double bits_per_symbol = 0.0;  // max(0, (d_v/q) log2(q!) - (d_v-1) log2 q)
  double fraction = 0.0;         // bits_per_symbol / log2(q)
};
BetheRate bethe_rate_estimate(int q, int d_v);

// log_q(M) / N for an arbitrary-precision codeword count M.
double combinatorial_rate(const BigInt& codeword_count, int block_length, int q);

struct EnsembleParams {
  int q = 3;
  int d_v = 3;
  int population_size = 100000;
  int max_de_iters = 500;
  double resolution = 1e-3;       // bisection stop width
  double target_residual = 1e-4;  // non-singleton fraction counts as converged
};

// One density-evolution run at a fixed erasure probability: population
// dynamics with a hidden-truth sampler (constraint side: random permutation,
// incoming subsets uniform given a cardinality drawn from the population and
// containing the edge's true symbol, trellis update; variable side: channel
// intersected with d_v-1 relabel-randomized constraint messages). Returns
// whether the non-singleton fraction of the variable-to-constraint
// population fell below target_residual.
bool de_converges(const EnsembleParams& params, double eps, std::uint64_t seed,
                  std::vector<double>* residual_trace = nullptr);

struct DEThreshold {
  double theta = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

// Bisection over the erasure probability; repeats > 1 reruns with derived
// seeds and reports [min, max] as the confidence interval.
DEThreshold de_threshold(const EnsembleParams& params, std::uint64_t seed,
                         int repeats = 1);

}  // namespace permcode
