#include "permcode/grid_io.hpp"

#include <fstream>
#include <sstream>

namespace permcode {

PartialGrid read_grid(std::istream& in) {
  int q = 0, n = 0;
  if (!(in >> q >> n)) throw std::invalid_argument("grid header: expected \"q N\"");
  if (q < 2 || q > kMaxAlphabet || n < 1) throw std::invalid_argument("grid header out of range");
  PartialGrid g;
  g.q = q;
  g.cells.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::string tok;
    if (!(in >> tok)) throw std::invalid_argument("grid truncated");
    if (tok == "." || tok == "0") {
      g.cells.push_back(full_mask(q));
      continue;
    }
    int s = 0;
    try {
      s = std::stoi(tok);
    } catch (...) {
      throw std::invalid_argument("bad grid token: " + tok);
    }
    if (s < 1 || s > q) throw std::invalid_argument("grid symbol out of range: " + tok);
    g.cells.push_back(symbol_bit(s));
  }
  return g;
}

PartialGrid read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open grid file: " + path);
  return read_grid(in);
}

void write_grid(std::ostream& out, const PartialGrid& grid) {
  const int n = static_cast<int>(grid.cells.size());
  out << grid.q << ' ' << n << '\n';
  for (int i = 0; i < n; ++i) {
    const Mask m = grid.cells[i];
    if (is_singleton(m))
      out << lowest_symbol(m);
    else
      out << '0';
    out << ((i % grid.q == grid.q - 1 || i == n - 1) ? '\n' : ' ');
  }
}

std::string grid_to_string(const PartialGrid& grid) {
  std::ostringstream os;
  write_grid(os, grid);
  return os.str();
}

}  // namespace permcode
