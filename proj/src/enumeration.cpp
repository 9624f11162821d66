#include "permcode/enumeration.hpp"

#include <algorithm>

#include "permcode/rng.hpp"

namespace permcode {

namespace {

// Iterative DFS over variables in index order. `visit` is called on each
// complete assignment; returning false aborts the search.
template <typename Visit>
void search(const FactorGraph& graph, const std::vector<Mask>& domain,
            Rng* shuffle_rng, Visit&& visit) {
  const int n = graph.num_vars();
  const int q = graph.q();
  std::vector<Mask> used(graph.num_constraints(), 0);
  std::vector<int> word(n, 0);
  // per-depth candidate lists
  std::vector<std::vector<int>> cand(n);
  std::vector<int> pos(n, 0);

  int depth = 0;
  while (true) {
    if (depth == n) {
      if (!visit(word)) return;
      --depth;
      if (depth < 0) return;
    } else if (pos[depth] == 0) {
      Mask m = domain[depth];
      for (const auto& e : graph.edges_of(depth)) m &= ~used[e.constraint];
      auto& list = cand[depth];
      list.clear();
      for (int s = 1; s <= q; ++s)
        if (m & symbol_bit(s)) list.push_back(s);
      if (shuffle_rng) shuffle_rng->shuffle(list.begin(), list.end());
    }
    if (depth < 0) return;
    // undo previous value at this depth, if any
    if (pos[depth] > 0) {
      const Mask bit = symbol_bit(word[depth]);
      for (const auto& e : graph.edges_of(depth)) used[e.constraint] &= ~bit;
    }
    if (pos[depth] == static_cast<int>(cand[depth].size())) {
      pos[depth] = 0;
      --depth;
      if (depth < 0) return;
      continue;
    }
    const int s = cand[depth][pos[depth]++];
    word[depth] = s;
    const Mask bit = symbol_bit(s);
    for (const auto& e : graph.edges_of(depth)) used[e.constraint] |= bit;
    ++depth;
  }
}

std::vector<Mask> full_domain(const FactorGraph& graph) {
  return std::vector<Mask>(graph.num_vars(), full_mask(graph.q()));
}

}  // namespace

CountResult count_codewords(const FactorGraph& graph,
                            std::optional<std::uint64_t> limit) {
  return count_completions(graph, PartialGrid{graph.q(), full_domain(graph)}, limit);
}

CountResult count_completions(const FactorGraph& graph, const PartialGrid& grid,
                              std::optional<std::uint64_t> limit) {
  if (static_cast<int>(grid.cells.size()) != graph.num_vars())
    throw std::invalid_argument("grid size mismatch");
  CountResult res;
  search(graph, grid.cells, nullptr, [&](const Codeword&) {
    ++res.count;
    if (limit && res.count >= *limit) {
      res.capped = true;
      return false;
    }
    return true;
  });
  return res;
}

std::vector<Codeword> enumerate_codewords(const FactorGraph& graph,
                                          std::optional<std::uint64_t> limit) {
  std::vector<Codeword> out;
  search(graph, full_domain(graph), nullptr, [&](const Codeword& w) {
    out.push_back(w);
    return !(limit && out.size() >= *limit);
  });
  return out;
}

Codeword sample_codeword(const FactorGraph& graph, std::uint64_t seed) {
  Rng rng(seed);
  Codeword result;
  search(graph, full_domain(graph), &rng, [&](const Codeword& w) {
    result = w;
    return false;
  });
  if (result.empty()) throw ConstructionError("graph has no codeword");
  return result;
}

}  // namespace permcode
