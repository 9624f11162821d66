#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permcode/factor_graph.hpp"

namespace permcode {

struct SimConfig {
  StructureKind structure = StructureKind::sudoku;
  int q = 9;
  std::vector<double> eps_grid;
  int min_codewords = 100;
  int min_block_errors = 100;
  std::uint64_t max_trials = 2000000;
  int patterns_per_codeword = 100;  // erasure patterns per sampled codeword
  std::uint64_t seed = 0;
  int workers = 1;
  bool timing = false;  // fill the seconds column with wall time
};

struct SimRecord {
  double eps = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t block_errors = 0;
  double bler = 0.0;
  std::uint64_t symbol_errors = 0;
  double ser = 0.0;
  std::uint64_t stalled = 0;
  std::uint64_t contradictions = 0;
  double seconds = 0.0;
};

// Monte Carlo transmission over the q-ary erasure channel: sample codewords,
// erase symbols independently, decode with the subset BP, count a block
// error when the status is not `decoded`. A point stops once both the
// codeword and block-error minima are met (or at max_trials), evaluated at
// deterministic batch boundaries of patterns_per_codeword * workers trials,
// so output depends only on (seed, workers).
std::vector<SimRecord> simulate_erasure(const FactorGraph& graph, const SimConfig& config);
std::vector<SimRecord> simulate_erasure(const SimConfig& config);

std::string sim_records_to_csv(const std::vector<SimRecord>& records);

// "start:stop:step" (inclusive stop within half a step) or a single value.
std::vector<double> parse_eps_grid(const std::string& spec);

}  // namespace permcode
