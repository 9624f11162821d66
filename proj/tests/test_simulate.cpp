#include <doctest.h>

#include "permcode/simulate.hpp"

using namespace permcode;

namespace {

SimConfig quick_config() {
  SimConfig cfg;
  cfg.structure = StructureKind::sudoku;
  cfg.q = 4;
  cfg.min_codewords = 20;
  cfg.min_block_errors = 20;
  cfg.max_trials = 20000;
  cfg.patterns_per_codeword = 10;
  cfg.seed = 123;
  return cfg;
}

}  // namespace

TEST_CASE("eps grid parsing") {
  const auto grid = parse_eps_grid("0.1:0.3:0.1");
  REQUIRE(grid.size() == 3);
  CHECK(grid[0] == doctest::Approx(0.1));
  CHECK(grid[2] == doctest::Approx(0.3));
  CHECK(parse_eps_grid("0.25").size() == 1);
  CHECK_THROWS_AS(parse_eps_grid("0.1:0.2:0"), std::invalid_argument);
}

TEST_CASE("nothing erased means no block errors") {
  SimConfig cfg = quick_config();
  cfg.eps_grid = {0.0};
  const auto rec = simulate_erasure(cfg);
  REQUIRE(rec.size() == 1);
  CHECK(rec[0].block_errors == 0);
  CHECK(rec[0].bler == 0.0);
}

TEST_CASE("valid-codeword channels never produce contradictions") {
  SimConfig cfg = quick_config();
  cfg.eps_grid = {0.2, 0.5, 0.8};
  for (const auto& r : simulate_erasure(cfg)) CHECK(r.contradictions == 0);
}

TEST_CASE("BLER is monotone in eps within noise") {
  SimConfig cfg = quick_config();
  cfg.eps_grid = {0.1, 0.3, 0.5, 0.7, 0.9};
  const auto rec = simulate_erasure(cfg);
  for (std::size_t i = 1; i < rec.size(); ++i)
    CHECK(rec[i].bler >= rec[i - 1].bler - 0.05);
}

TEST_CASE("CSV output is byte-identical for a (seed, workers) pair") {
  SimConfig cfg = quick_config();
  cfg.eps_grid = {0.3, 0.6};
  const std::string a = sim_records_to_csv(simulate_erasure(cfg));
  const std::string b = sim_records_to_csv(simulate_erasure(cfg));
  CHECK(a == b);
  CHECK(a.find("eps,trials,block_errors,bler") == 0);

  cfg.workers = 2;
  const std::string c = sim_records_to_csv(simulate_erasure(cfg));
  const std::string d = sim_records_to_csv(simulate_erasure(cfg));
  CHECK(c == d);
}

TEST_CASE("block errors respect the stopping rule") {
  SimConfig cfg = quick_config();
  cfg.eps_grid = {0.6};
  const auto rec = simulate_erasure(cfg);
  REQUIRE(rec.size() == 1);
  const bool enough = rec[0].block_errors >= 20 &&
                      rec[0].trials / cfg.patterns_per_codeword >= 20;
  CHECK((enough || rec[0].trials >= cfg.max_trials));
}
