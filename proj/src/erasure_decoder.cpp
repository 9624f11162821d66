#include "permcode/erasure_decoder.hpp"

namespace permcode {

const char* to_string(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::decoded: return "decoded";
    case DecodeStatus::stalled: return "stalled";
    case DecodeStatus::contradiction: return "contradiction";
  }
  return "?";
}

ErasurePropagator::ErasurePropagator(const FactorGraph& graph) : graph_(&graph) {
  const int n_edges = graph.num_edges();
  obs_.resize(graph.num_vars());
  v2c_.resize(n_edges);
  c2v_.resize(n_edges);
  cons_dirty_.resize(graph.num_constraints());
  var_dirty_.resize(graph.num_vars());
  scratch_.q = graph.q();
  scratch_.rows.resize(graph.q());
  reset(PartialGrid::fully_erased(graph.q(), graph.num_vars()));
}

void ErasurePropagator::reset(const PartialGrid& observed) {
  if (static_cast<int>(observed.cells.size()) != graph_->num_vars() ||
      observed.q != graph_->q())
    throw std::invalid_argument("observation shape mismatch");
  for (Mask m : observed.cells)
    if (m == 0) throw std::invalid_argument("observed cell is empty");
  obs_ = observed.cells;
  std::fill(c2v_.begin(), c2v_.end(), full_mask(graph_->q()));
  std::fill(cons_dirty_.begin(), cons_dirty_.end(), 1);
  std::fill(var_dirty_.begin(), var_dirty_.end(), 1);
  for (int v = 0; v < graph_->num_vars(); ++v)
    for (const auto& e : graph_->edges_of(v))
      v2c_[graph_->edge_index(e.constraint, e.slot)] = obs_[v];
  contradiction_ = false;
  sweeps_ = 0;
}

void ErasurePropagator::assign(int var, int symbol) {
  obs_[var] &= symbol_bit(symbol);
  if (obs_[var] == 0) {
    contradiction_ = true;
    return;
  }
  var_dirty_[var] = 1;
}

void ErasurePropagator::update_variable(int v) {
  // v2c[e] = obs ∩ messages from the other constraints of v (extrinsic)
  const auto& edges = graph_->edges_of(v);
  const int d = static_cast<int>(edges.size());
  for (int k = 0; k < d; ++k) {
    Mask m = obs_[v];
    for (int k2 = 0; k2 < d; ++k2) {
      if (k2 == k) continue;
      m &= c2v_[graph_->edge_index(edges[k2].constraint, edges[k2].slot)];
    }
    Mask& slot = v2c_[graph_->edge_index(edges[k].constraint, edges[k].slot)];
    if (slot != m) {
      slot = m;
      cons_dirty_[edges[k].constraint] = 1;
      if (m == 0) contradiction_ = true;
    }
  }
}

bool ErasurePropagator::sweep() {
  if (contradiction_) return false;
  ++sweeps_;
  bool changed = false;

  // variable stage: recompute v2c for dirty variables
  for (int v = 0; v < graph_->num_vars(); ++v) {
    if (!var_dirty_[v]) continue;
    var_dirty_[v] = 0;
    update_variable(v);
    if (contradiction_) return true;
  }

  // constraint stage: recompute c2v where inputs changed
  for (int c = 0; c < graph_->num_constraints(); ++c) {
    if (!cons_dirty_[c]) continue;
    cons_dirty_[c] = 0;
    const int q = graph_->q();
    for (int s = 0; s < q; ++s) scratch_.rows[s] = v2c_[graph_->edge_index(c, s)];
    SubsetUpdateResult upd = constraint_update_subsets_trellis(scratch_);
    if (upd.contradiction) {
      contradiction_ = true;
      return true;
    }
    for (int s = 0; s < q; ++s) {
      Mask& slot = c2v_[graph_->edge_index(c, s)];
      if (slot != upd.messages.rows[s]) {
        slot = upd.messages.rows[s];
        changed = true;
        var_dirty_[graph_->constraint(c)[s]] = 1;
        if (slot == 0) contradiction_ = true;
      }
    }
    if (contradiction_) return true;
  }
  return changed;
}

DecodeStatus ErasurePropagator::propagate() {
  while (sweep()) {
    if (contradiction_) return DecodeStatus::contradiction;
  }
  if (contradiction_) return DecodeStatus::contradiction;
  for (int v = 0; v < graph_->num_vars(); ++v) {
    const Mask m = cell(v);
    if (m == 0) return DecodeStatus::contradiction;
    if (!is_singleton(m)) return DecodeStatus::stalled;
  }
  return DecodeStatus::decoded;
}

Mask ErasurePropagator::cell(int v) const {
  Mask m = obs_[v];
  for (const auto& e : graph_->edges_of(v))
    m &= c2v_[graph_->edge_index(e.constraint, e.slot)];
  return m;
}

PartialGrid ErasurePropagator::grid() const {
  PartialGrid g;
  g.q = graph_->q();
  g.cells.resize(graph_->num_vars());
  for (int v = 0; v < graph_->num_vars(); ++v) g.cells[v] = cell(v);
  return g;
}

ErasureDecodeResult decode_erasure(const FactorGraph& graph, const PartialGrid& observed) {
  ErasurePropagator prop(graph);
  prop.reset(observed);
  ErasureDecodeResult res;
  res.status = prop.propagate();
  res.iterations = prop.sweeps_run();
  if (res.status == DecodeStatus::contradiction) {
    res.grid = PartialGrid{graph.q(), std::vector<Mask>(graph.num_vars(), 0)};
  } else {
    res.grid = prop.grid();
  }
  return res;
}

}  // namespace permcode
