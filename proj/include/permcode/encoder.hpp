#pragma once

#include <cstdint>
#include <vector>

#include "permcode/erasure_decoder.hpp"
#include "permcode/factor_graph.hpp"
#include "permcode/interval_coder.hpp"

namespace permcode {

struct EncoderConfig {
  // Prefix-reservation recursion depth. Attempts before the last reserve the
  // last candidate of their first decision; the final attempt draws from all
  // candidates. Variable scan order is index order, candidates ascending.
  int max_attempts = 3;
};

enum class EncodeStatus { success, failure };

struct EncodeResult {
  EncodeStatus status = EncodeStatus::failure;
  Codeword codeword;                // valid iff status == success
  int attempts = 1;                 // prefix-reservation depth reached
  std::uint64_t bits_consumed = 0;  // by the successful attempt
  double sum_log2_k = 0.0;          // effective draw cardinalities, log2
  double rate = 0.0;                // sum_log2_k / (N log2 q)
};

// Universal encoder: repeatedly run the erasure decoder to a fixed point on
// the partial grid, then let the arithmetic coder pick a value for the first
// undetermined cell. A cell emptying out is an encoding failure; the coder
// and source are rolled back and the reserved prefix replayed.
// Stream mode: reuse `coder` across calls. Throws SourceExhausted if the
// source runs dry.
EncodeResult encode_codeword(const FactorGraph& graph, BitSource& source,
                             DrawCoder& coder, const EncoderConfig& config = {});

struct RecoverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RecoverResult {
  std::vector<std::uint8_t> bits;  // consensus bits (+ flush tail if flushed)
  int attempts = 1;
};

// Replays the encoder on a codeword, detecting reserved prefixes (which
// consumed no source bits) and emitting source bits under the consensus
// rule. Stream mode: reuse `coder`; bits emitted so far are coder.emitted().
int recover_codeword(const FactorGraph& graph, const Codeword& word,
                     ReplayCoder& coder, const EncoderConfig& config = {});

// Flush tail for a recovered stream, verified by replay: the leftmost
// shortest dyadic inside the pending interval whose bits, appended to the
// consensus prefix, re-encode to exactly `words`. The raw leftmost-shortest
// dyadic already works unless a failed reservation attempt's lazy reads
// straddle it, so the search almost always stops at its first candidate.
std::vector<std::uint8_t> flush_with_replay(const FactorGraph& graph,
                                            const std::vector<Codeword>& words,
                                            const ReplayCoder& coder,
                                            const EncoderConfig& config = {});

// Standalone recovery: fresh coder, consensus bits plus the verified flush.
RecoverResult recover_source(const FactorGraph& graph, const Codeword& word,
                             const EncoderConfig& config = {});

struct EncoderStats {
  double failure_prob_first_attempt = 0.0;
  double mean_rate = 0.0;      // over successful encodings
  double mean_attempts = 0.0;  // over successful encodings
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
};

// Monte Carlo over independent seeded sources, one fresh coder per trial.
EncoderStats estimate_encoder_stats(const FactorGraph& graph, std::uint64_t trials,
                                    std::uint64_t seed, const EncoderConfig& config = {});

}  // namespace permcode
