#include "permcode/soft_decoder.hpp"

#include <cmath>

namespace permcode {

const char* to_string(SoftStatus s) {
  switch (s) {
    case SoftStatus::decoded: return "decoded";
    case SoftStatus::max_iters: return "max-iters";
    case SoftStatus::contradiction: return "contradiction";
  }
  return "?";
}

ChannelPriors priors_from_grid(const PartialGrid& grid) {
  ChannelPriors priors;
  priors.reserve(grid.cells.size());
  for (Mask m : grid.cells) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(grid.q);
    const int c = cardinality(m);
    if (c == 0) throw std::invalid_argument("empty cell has no prior");
    for (int s = 1; s <= grid.q; ++s)
      if (m & symbol_bit(s)) p(s - 1) = 1.0 / c;
    priors.push_back(std::move(p));
  }
  return priors;
}

ChannelPriors priors_symmetric_flip(int q, const Codeword& received, double flip_prob) {
  if (flip_prob < 0.0 || flip_prob >= 1.0) throw std::invalid_argument("flip probability out of range");
  ChannelPriors priors;
  priors.reserve(received.size());
  for (int s : received) {
    if (s < 1 || s > q) throw std::invalid_argument("received symbol out of range");
    Eigen::VectorXd p = Eigen::VectorXd::Constant(q, flip_prob / (q - 1));
    p(s - 1) = 1.0 - flip_prob;
    priors.push_back(std::move(p));
  }
  return priors;
}

std::optional<Eigen::VectorXd> variable_update_soft(
    const Eigen::VectorXd& prior, const std::vector<Eigen::VectorXd>& incoming) {
  Eigen::VectorXd prod = prior;
  for (const auto& m : incoming) prod = prod.cwiseProduct(m);
  const double s = prod.sum();
  if (s <= 0.0) return std::nullopt;
  return prod / s;
}

SoftPropagator::SoftPropagator(const FactorGraph& graph, ChannelPriors priors)
    : graph_(&graph), priors_(std::move(priors)) {
  if (static_cast<int>(priors_.size()) != graph.num_vars())
    throw std::invalid_argument("priors length mismatch");
  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(graph.q(), 1.0 / graph.q());
  v2c_.assign(graph.num_edges(), uniform);
  c2v_.assign(graph.num_edges(), uniform);
}

double SoftPropagator::sweep() {
  if (contradiction_) return 0.0;
  const int q = graph_->q();
  double delta = 0.0;

  // variable stage
  for (int v = 0; v < graph_->num_vars(); ++v) {
    const auto& edges = graph_->edges_of(v);
    const int d = static_cast<int>(edges.size());
    for (int k = 0; k < d; ++k) {
      Eigen::VectorXd prod = priors_[v];
      for (int k2 = 0; k2 < d; ++k2) {
        if (k2 == k) continue;
        prod = prod.cwiseProduct(c2v_[graph_->edge_index(edges[k2].constraint, edges[k2].slot)]);
      }
      const double s = prod.sum();
      if (s <= 0.0) {
        contradiction_ = true;
        return delta;
      }
      prod /= s;
      auto& slot = v2c_[graph_->edge_index(edges[k].constraint, edges[k].slot)];
      delta = std::max(delta, (prod - slot).cwiseAbs().maxCoeff());
      slot = std::move(prod);
    }
  }

  // constraint stage
  Eigen::MatrixXd a(q, q);
  for (int c = 0; c < graph_->num_constraints(); ++c) {
    for (int s = 0; s < q; ++s) a.row(s) = v2c_[graph_->edge_index(c, s)].transpose();
    SoftConstraintUpdate upd = constraint_update_soft(a);
    if (upd.contradiction) {
      contradiction_ = true;
      return delta;
    }
    for (int s = 0; s < q; ++s) {
      auto& slot = c2v_[graph_->edge_index(c, s)];
      const Eigen::VectorXd msg = upd.messages.row(s).transpose();
      delta = std::max(delta, (msg - slot).cwiseAbs().maxCoeff());
      slot = msg;
    }
  }
  return delta;
}

std::vector<Eigen::VectorXd> SoftPropagator::marginals() const {
  std::vector<Eigen::VectorXd> out;
  out.reserve(graph_->num_vars());
  for (int v = 0; v < graph_->num_vars(); ++v) {
    Eigen::VectorXd prod = priors_[v];
    for (const auto& e : graph_->edges_of(v))
      prod = prod.cwiseProduct(c2v_[graph_->edge_index(e.constraint, e.slot)]);
    const double s = prod.sum();
    if (s > 0.0) prod /= s;
    out.push_back(std::move(prod));
  }
  return out;
}

Codeword SoftPropagator::hard_decision() const {
  Codeword w;
  w.reserve(graph_->num_vars());
  for (const auto& m : marginals()) {
    int best = 0;
    for (int j = 1; j < m.size(); ++j)
      if (m(j) > m(best)) best = j;  // ties keep the lowest symbol
    w.push_back(best + 1);
  }
  return w;
}

SoftDecodeResult decode_soft(const FactorGraph& graph, const ChannelPriors& priors,
                             const SoftDecodeOptions& opts) {
  SoftPropagator prop(graph, priors);
  SoftDecodeResult res;
  for (int t = 1; t <= opts.max_iters; ++t) {
    const double delta = prop.sweep();
    res.iterations = t;
    if (prop.contradiction()) {
      res.status = SoftStatus::contradiction;
      res.marginals = prop.marginals();
      res.hard_decision = prop.hard_decision();
      return res;
    }
    res.hard_decision = prop.hard_decision();
    if (validate(graph, res.hard_decision)) {
      res.status = SoftStatus::decoded;
      res.marginals = prop.marginals();
      return res;
    }
    if (delta < opts.tol) break;
  }
  res.status = SoftStatus::max_iters;
  res.marginals = prop.marginals();
  res.hard_decision = prop.hard_decision();
  return res;
}

}  // namespace permcode
