#pragma once

#include <vector>

#include "permcode/factor_graph.hpp"
#include "permcode/subset_rules.hpp"

namespace permcode {

enum class DecodeStatus { decoded, stalled, contradiction };

const char* to_string(DecodeStatus s);

struct ErasureDecodeResult {
  PartialGrid grid;
  DecodeStatus status = DecodeStatus::stalled;
  int iterations = 0;
};

// Subset-message belief propagation. Flooding schedule: one sweep computes
// all variable-to-constraint messages from the previous constraint messages,
// then all constraint-to-variable messages (constraints whose inputs did not
// change are skipped; the skipped recomputation is exact, so sweep semantics
// match naive flooding). Messages only shrink, so a fixed point is reached in
// finitely many sweeps.
class ErasurePropagator {
 public:
  explicit ErasurePropagator(const FactorGraph& graph);

  void reset(const PartialGrid& observed);
  // Restrict a cell's observation; used by the encoder between decisions.
  void assign(int var, int symbol);

  // One flooding sweep; returns true if any message changed.
  bool sweep();
  // Sweeps to the fixed point (or first contradiction); returns status.
  DecodeStatus propagate();

  bool contradiction() const { return contradiction_; }
  int sweeps_run() const { return sweeps_; }

  // Current cell posterior: observation intersected with all constraint
  // messages.
  Mask cell(int v) const;
  PartialGrid grid() const;

  // Message accessors for cross-decoder tests.
  Mask var_to_constraint(int c, int slot) const { return v2c_[graph_->edge_index(c, slot)]; }
  Mask constraint_to_var(int c, int slot) const { return c2v_[graph_->edge_index(c, slot)]; }

 private:
  void update_variable(int v);

  const FactorGraph* graph_;
  std::vector<Mask> obs_;
  std::vector<Mask> v2c_;
  std::vector<Mask> c2v_;
  std::vector<char> cons_dirty_;
  std::vector<char> var_dirty_;
  SubsetMatrix scratch_;
  bool contradiction_ = false;
  int sweeps_ = 0;
};

// Runs the propagator to its fixed point on the observed grid.
// Given an observation consistent with a codeword, the transmitted symbol is
// never removed, so a contradiction implies inconsistent input.
ErasureDecodeResult decode_erasure(const FactorGraph& graph, const PartialGrid& observed);

}  // namespace permcode
