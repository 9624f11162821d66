#include <doctest.h>

#include "permcode/enumeration.hpp"
#include "permcode/erasure_decoder.hpp"
#include "permcode/rng.hpp"

using namespace permcode;

namespace {

PartialGrid erase_positions(const Codeword& word, int q, const std::vector<int>& positions) {
  PartialGrid g = PartialGrid::from_codeword(q, word);
  for (int p : positions) g.cells[p] = full_mask(q);
  return g;
}

PartialGrid random_erasure(const Codeword& word, int q, double eps, Rng& rng) {
  PartialGrid g = PartialGrid::from_codeword(q, word);
  for (auto& cell : g.cells)
    if (rng.unit() < eps) cell = full_mask(q);
  return g;
}

}  // namespace

TEST_CASE("single erased cell is forced by its row") {
  const FactorGraph g = build_structure(StructureKind::sudoku, 4);
  const Codeword word = {1, 2, 3, 4, 3, 4, 1, 2, 2, 1, 4, 3, 4, 3, 2, 1};
  REQUIRE(validate(g, word));
  const auto res = decode_erasure(g, erase_positions(word, 4, {5}));
  CHECK(res.status == DecodeStatus::decoded);
  CHECK(res.grid.to_codeword() == word);
}

TEST_CASE("fully erased grid stalls with full cells") {
  const FactorGraph g = build_structure(StructureKind::sudoku, 4);
  const auto res = decode_erasure(g, PartialGrid::fully_erased(4, 16));
  CHECK(res.status == DecodeStatus::stalled);
  for (Mask m : res.grid.cells) CHECK(m == full_mask(4));
}

TEST_CASE("inconsistent observation yields a contradiction") {
  const FactorGraph g = build_structure(StructureKind::latin, 3);
  // two cells of the same row pinned to the same symbol
  PartialGrid grid = PartialGrid::fully_erased(3, 9);
  grid.cells[0] = symbol_bit(1);
  grid.cells[1] = symbol_bit(1);
  const auto res = decode_erasure(g, grid);
  CHECK(res.status == DecodeStatus::contradiction);
}

TEST_CASE("the transmitted symbol is never removed") {
  Rng rng(99);
  for (StructureKind kind : {StructureKind::sudoku, StructureKind::semi_pandiagonal}) {
    const int q = kind == StructureKind::sudoku ? 4 : 5;
    const FactorGraph g = build_structure(kind, q);
    for (int trial = 0; trial < 500; ++trial) {
      const Codeword word = sample_codeword(g, derive_seed(4, trial));
      const double eps = rng.unit();
      const auto res = decode_erasure(g, random_erasure(word, q, eps, rng));
      REQUIRE(res.status != DecodeStatus::contradiction);
      for (int v = 0; v < g.num_vars(); ++v)
        CHECK((res.grid.cells[v] & symbol_bit(word[v])) != 0);
      if (res.status == DecodeStatus::decoded) CHECK(res.grid.to_codeword() == word);
    }
  }
}

TEST_CASE("fixed point: rerunning any constraint update changes nothing") {
  const FactorGraph g = build_structure(StructureKind::sudoku, 9);
  const Codeword word = sample_codeword(g, 7);
  Rng rng(5);
  const auto res = decode_erasure(g, random_erasure(word, 9, 0.5, rng));
  REQUIRE(res.status != DecodeStatus::contradiction);
  // a second decode starting from the fixed-point grid reproduces it
  const auto again = decode_erasure(g, res.grid);
  CHECK(again.grid.cells == res.grid.cells);
  CHECK(again.status == res.status);
}

TEST_CASE("assign() between propagations matches cold decoding") {
  const FactorGraph g = build_structure(StructureKind::sudoku, 9);
  const Codeword word = sample_codeword(g, 21);
  Rng rng(6);
  PartialGrid obs = random_erasure(word, 9, 0.6, rng);

  ErasurePropagator warm(g);
  warm.reset(PartialGrid::fully_erased(9, 81));
  // feed the observations one by one with propagation in between
  for (int v = 0; v < 81; ++v) {
    if (is_singleton(obs.cells[v])) {
      warm.assign(v, lowest_symbol(obs.cells[v]));
      if (v % 7 == 0) warm.propagate();
    }
  }
  const DecodeStatus warm_status = warm.propagate();
  const auto cold = decode_erasure(g, obs);
  CHECK(warm_status == cold.status);
  CHECK(warm.grid().cells == cold.grid.cells);
}
