#include "permcode/encoder.hpp"

#include <cmath>

#include "permcode/rng.hpp"

namespace permcode {

namespace {

// First undetermined cell in index order; -1 when the grid is complete.
int first_open_cell(const ErasurePropagator& prop, int n_vars) {
  for (int v = 0; v < n_vars; ++v)
    if (!is_singleton(prop.cell(v))) return v;
  return -1;
}

std::vector<int> ascending_candidates(Mask m, int q) {
  std::vector<int> out;
  for (int s = 1; s <= q; ++s)
    if (m & symbol_bit(s)) out.push_back(s);
  return out;
}

}  // namespace

EncodeResult encode_codeword(const FactorGraph& graph, BitSource& source,
                             DrawCoder& coder, const EncoderConfig& config) {
  if (config.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
  const int q = graph.q();
  const int n = graph.num_vars();
  const DrawCoder coder_at_start = coder;
  const std::size_t source_at_start = source.position();

  EncodeResult res;
  ErasurePropagator prop(graph);

  for (int attempt = 1; attempt <= config.max_attempts; ++attempt) {
    coder = coder_at_start;
    source.seek(source_at_start);
    prop.reset(PartialGrid::fully_erased(q, n));
    double sum_log2_k = 0.0;
    bool failed = false;

    // Reserved prefix: attempts 1..attempt-1 each reserved the last candidate
    // of their first decision; replay those assignments without draws.
    for (int r = 0; r < attempt - 1 && !failed; ++r) {
      if (prop.propagate() == DecodeStatus::contradiction) { failed = true; break; }
      const int cell = first_open_cell(prop, n);
      if (cell < 0) throw std::logic_error("reserved prefix ran past a complete grid");
      const auto cands = ascending_candidates(prop.cell(cell), q);
      prop.assign(cell, cands.back());
    }

    bool first_draw = true;
    while (!failed) {
      const DecodeStatus st = prop.propagate();
      if (st == DecodeStatus::contradiction) { failed = true; break; }
      const int cell = first_open_cell(prop, n);
      if (cell < 0) break;  // complete
      auto cands = ascending_candidates(prop.cell(cell), q);
      if (first_draw && attempt < config.max_attempts) cands.pop_back();  // reserve
      first_draw = false;
      const int k = static_cast<int>(cands.size());
      const int idx = coder.draw_uniform(k, source);
      sum_log2_k += std::log2(static_cast<double>(k));
      prop.assign(cell, cands[idx]);
    }

    if (!failed) {
      res.status = EncodeStatus::success;
      res.codeword = prop.grid().to_codeword();
      res.attempts = attempt;
      res.bits_consumed = source.position() - source_at_start;
      res.sum_log2_k = sum_log2_k;
      res.rate = sum_log2_k / (n * std::log2(static_cast<double>(q)));
      return res;
    }
  }

  coder = coder_at_start;
  source.seek(source_at_start);
  res.status = EncodeStatus::failure;
  res.attempts = config.max_attempts;
  return res;
}

int recover_codeword(const FactorGraph& graph, const Codeword& word,
                     ReplayCoder& coder, const EncoderConfig& config) {
  if (config.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
  if (!validate(graph, word)) throw RecoverError("codeword does not satisfy the graph");
  const int q = graph.q();
  const int n = graph.num_vars();

  ErasurePropagator prop(graph);
  int attempts = 1;
  bool at_checkpoint = true;  // at the current attempt's first decision

  for (;;) {
    if (prop.propagate() == DecodeStatus::contradiction)
      throw RecoverError("replay reached a contradiction");
    const int cell = first_open_cell(prop, n);
    if (cell < 0) break;
    auto cands = ascending_candidates(prop.cell(cell), q);
    const int value = word[cell];
    auto pos_of = [&](const std::vector<int>& list) {
      for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i] == value) return static_cast<int>(i);
      return -1;
    };

    if (at_checkpoint && attempts < config.max_attempts) {
      if (value == cands.back()) {
        // reserved candidate: a retry happened; no source bits were consumed
        ++attempts;
        prop.assign(cell, value);
        continue;
      }
      cands.pop_back();
      const int idx = pos_of(cands);
      if (idx < 0) throw RecoverError("codeword value outside the permitted candidates");
      coder.refine(static_cast<int>(cands.size()), idx);
    } else {
      const int idx = pos_of(cands);
      if (idx < 0) throw RecoverError("codeword value outside the permitted candidates");
      coder.refine(static_cast<int>(cands.size()), idx);
    }
    at_checkpoint = false;
    prop.assign(cell, value);
  }
  return attempts;
}

std::vector<std::uint8_t> flush_with_replay(const FactorGraph& graph,
                                            const std::vector<Codeword>& words,
                                            const ReplayCoder& coder,
                                            const EncoderConfig& config) {
  const RationalInterval& c = coder.interval();
  auto reproduces = [&](const std::vector<std::uint8_t>& bits) {
    BitSource src(bits);
    DrawCoder probe;
    try {
      for (const Codeword& w : words) {
        const EncodeResult r = encode_codeword(graph, src, probe, config);
        if (r.status != EncodeStatus::success || r.codeword != w) return false;
      }
    } catch (const SourceExhausted&) {
      return false;
    }
    return true;
  };

  int tested = 0;
  for (int depth = 0; depth < 512; ++depth) {
    const BigInt scaled_lo = c.lo << depth;
    BigInt t = scaled_lo / c.den;
    if (t * c.den < scaled_lo) ++t;  // ceil
    for (; (t + 1) * c.den <= (c.hi << depth); ++t) {
      std::vector<std::uint8_t> bits = coder.emitted();
      for (int b = 0; b < depth; ++b)
        bits.push_back(static_cast<std::uint8_t>((t >> (depth - 1 - b)) & 1));
      if (reproduces(bits))
        return {bits.begin() + static_cast<long>(coder.emitted().size()), bits.end()};
      if (++tested > 4096)
        throw RecoverError("no flush tail reproduces the recovered stream");
    }
  }
  throw RecoverError("no flush tail reproduces the recovered stream");
}

RecoverResult recover_source(const FactorGraph& graph, const Codeword& word,
                             const EncoderConfig& config) {
  ReplayCoder coder;
  RecoverResult res;
  res.attempts = recover_codeword(graph, word, coder, config);
  res.bits = coder.emitted();
  const auto tail = flush_with_replay(graph, {word}, coder, config);
  res.bits.insert(res.bits.end(), tail.begin(), tail.end());
  return res;
}

EncoderStats estimate_encoder_stats(const FactorGraph& graph, std::uint64_t trials,
                                    std::uint64_t seed, const EncoderConfig& config) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  EncoderStats stats;
  stats.trials = trials;
  std::uint64_t first_attempt_failures = 0;
  double rate_sum = 0.0;
  double attempts_sum = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    BitSource source = BitSource::seeded(derive_seed(seed, t));
    DrawCoder coder;
    const EncodeResult r = encode_codeword(graph, source, coder, config);
    if (r.status == EncodeStatus::failure || r.attempts > 1) ++first_attempt_failures;
    if (r.status == EncodeStatus::success) {
      ++stats.successes;
      rate_sum += r.rate;
      attempts_sum += r.attempts;
    }
  }
  stats.failure_prob_first_attempt =
      static_cast<double>(first_attempt_failures) / static_cast<double>(trials);
  if (stats.successes > 0) {
    stats.mean_rate = rate_sum / static_cast<double>(stats.successes);
    stats.mean_attempts = attempts_sum / static_cast<double>(stats.successes);
  }
  return stats;
}

}  // namespace permcode
