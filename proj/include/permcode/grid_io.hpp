#pragma once

#include <iosfwd>
#include <string>

#include "permcode/factor_graph.hpp"

namespace permcode {

// Grid text format: first line "q N", then N whitespace-separated tokens in
// row-major order; symbols are "1".."q", an erased cell is "0" or ".".
// write_grid emits erased cells as "0" and breaks lines every q tokens.
// Round trips are bit-exact for write_grid output.

PartialGrid read_grid(std::istream& in);
PartialGrid read_grid_file(const std::string& path);
void write_grid(std::ostream& out, const PartialGrid& grid);
std::string grid_to_string(const PartialGrid& grid);

}  // namespace permcode
