#include <doctest.h>

#include <sstream>

#include "permcode/grid_io.hpp"

using namespace permcode;

TEST_CASE("grid round trip is bit-exact") {
  PartialGrid g;
  g.q = 4;
  g.cells = {symbol_bit(1), full_mask(4), symbol_bit(3), symbol_bit(4),
             full_mask(4), symbol_bit(2), symbol_bit(1), full_mask(4),
             symbol_bit(2), symbol_bit(1), symbol_bit(4), symbol_bit(3),
             full_mask(4), symbol_bit(3), symbol_bit(2), symbol_bit(1)};
  const std::string text = grid_to_string(g);
  std::istringstream in(text);
  const PartialGrid back = read_grid(in);
  CHECK(back.q == g.q);
  CHECK(back.cells == g.cells);
  CHECK(grid_to_string(back) == text);
}

TEST_CASE("dots and zeros both mean erased") {
  std::istringstream in("3 9\n1 . 3\n0 2 .\n3 0 1\n");
  const PartialGrid g = read_grid(in);
  CHECK(g.cells[1] == full_mask(3));
  CHECK(g.cells[3] == full_mask(3));
  CHECK(g.cells[8] == symbol_bit(1));
}

TEST_CASE("malformed grids are rejected") {
  std::istringstream bad_header("x");
  CHECK_THROWS_AS(read_grid(bad_header), std::invalid_argument);
  std::istringstream truncated("4 16\n1 2 3");
  CHECK_THROWS_AS(read_grid(truncated), std::invalid_argument);
  std::istringstream out_of_range("3 9\n1 2 3 4 1 2 3 1 2\n");
  CHECK_THROWS_AS(read_grid(out_of_range), std::invalid_argument);
}
