#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "permcode/factor_graph.hpp"

namespace permcode {

struct CountResult {
  std::uint64_t count = 0;
  bool capped = false;  // limit hit; count is a partial result
};

// Exact codeword count by depth-first search with forward checking,
// variables in index order, values ascending. Brute-force oracle for
// rates and sampling tests.
CountResult count_codewords(const FactorGraph& graph,
                            std::optional<std::uint64_t> limit = std::nullopt);

// All codewords, in DFS order; capped at `limit` words when given.
std::vector<Codeword> enumerate_codewords(const FactorGraph& graph,
                                          std::optional<std::uint64_t> limit = std::nullopt);

// One valid codeword via backtracking with a seeded shuffle of the value
// order at each cell. Deterministic given seed; not a uniform sampler.
Codeword sample_codeword(const FactorGraph& graph, std::uint64_t seed);

// Count completions of a partial assignment (cells with candidate sets).
CountResult count_completions(const FactorGraph& graph, const PartialGrid& grid,
                              std::optional<std::uint64_t> limit = std::nullopt);

}  // namespace permcode
