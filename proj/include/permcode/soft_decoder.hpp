#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "permcode/factor_graph.hpp"
#include "permcode/permanent.hpp"

namespace permcode {

// Per-variable symbol posteriors; each vector has length q and sums to 1.
using ChannelPriors = std::vector<Eigen::VectorXd>;

// Atomic priors for observed symbols, uniform for erased cells.
ChannelPriors priors_from_grid(const PartialGrid& grid);
// q-ary symmetric channel posterior around a transmitted codeword.
ChannelPriors priors_symmetric_flip(int q, const Codeword& received, double flip_prob);

enum class SoftStatus { decoded, max_iters, contradiction };
const char* to_string(SoftStatus s);

struct SoftDecodeResult {
  std::vector<Eigen::VectorXd> marginals;
  Codeword hard_decision;
  SoftStatus status = SoftStatus::max_iters;
  int iterations = 0;
};

struct SoftDecodeOptions {
  int max_iters = 50;
  double tol = 1e-8;  // max absolute message change
};

// Componentwise product of the prior and the incoming messages, renormalized;
// returns nullopt when the product has no mass (contradiction).
std::optional<Eigen::VectorXd> variable_update_soft(
    const Eigen::VectorXd& prior, const std::vector<Eigen::VectorXd>& incoming);

// Flooding-schedule belief propagation with the permanent-based constraint
// update. One instance per worker; the graph is shared and immutable.
class SoftPropagator {
 public:
  SoftPropagator(const FactorGraph& graph, ChannelPriors priors);

  // One flooding iteration (all v->c, then all c->v); returns the largest
  // absolute message change. Sets contradiction() on zero-mass products.
  double sweep();

  bool contradiction() const { return contradiction_; }
  std::vector<Eigen::VectorXd> marginals() const;
  Codeword hard_decision() const;  // argmax with lowest-symbol tie-break

  const Eigen::VectorXd& var_to_constraint(int c, int slot) const {
    return v2c_[graph_->edge_index(c, slot)];
  }
  const Eigen::VectorXd& constraint_to_var(int c, int slot) const {
    return c2v_[graph_->edge_index(c, slot)];
  }

 private:
  const FactorGraph* graph_;
  ChannelPriors priors_;
  std::vector<Eigen::VectorXd> v2c_;
  std::vector<Eigen::VectorXd> c2v_;
  bool contradiction_ = false;
};

SoftDecodeResult decode_soft(const FactorGraph& graph, const ChannelPriors& priors,
                             const SoftDecodeOptions& opts = {});

}  // namespace permcode
