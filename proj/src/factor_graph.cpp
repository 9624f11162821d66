#include "permcode/factor_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "permcode/rng.hpp"

namespace permcode {

const char* to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::latin: return "latin";
    case StructureKind::sudoku: return "sudoku";
    case StructureKind::pandiagonal: return "pandiagonal";
    case StructureKind::semi_pandiagonal: return "semi_pandiagonal";
    case StructureKind::random_regular: return "random_regular";
    case StructureKind::custom: return "custom";
  }
  return "?";
}

StructureKind structure_from_string(const std::string& name) {
  if (name == "latin") return StructureKind::latin;
  if (name == "sudoku") return StructureKind::sudoku;
  if (name == "pandiagonal") return StructureKind::pandiagonal;
  if (name == "semi_pandiagonal") return StructureKind::semi_pandiagonal;
  if (name == "random_regular") return StructureKind::random_regular;
  if (name == "custom") return StructureKind::custom;
  throw std::invalid_argument("unknown structure: " + name);
}

PartialGrid PartialGrid::from_codeword(int q, const Codeword& word) {
  PartialGrid g;
  g.q = q;
  g.cells.reserve(word.size());
  for (int s : word) {
    if (s < 1 || s > q) throw std::invalid_argument("symbol out of range");
    g.cells.push_back(symbol_bit(s));
  }
  return g;
}

Codeword PartialGrid::to_codeword() const {
  Codeword w;
  w.reserve(cells.size());
  for (Mask m : cells) {
    if (!is_singleton(m)) throw std::logic_error("grid not fully determined");
    w.push_back(lowest_symbol(m));
  }
  return w;
}

FactorGraph::FactorGraph(int q, int num_vars,
                         std::vector<std::vector<int>> constraints,
                         StructureKind tag)
    : q_(q), num_vars_(num_vars), constraints_(std::move(constraints)), tag_(tag) {
  if (q < 2 || q > kMaxAlphabet) throw std::invalid_argument("alphabet size out of range");
  if (num_vars < q) throw std::invalid_argument("too few variables");
  var_edges_.resize(num_vars_);
  for (int c = 0; c < num_constraints(); ++c) {
    const auto& members = constraints_[c];
    if (static_cast<int>(members.size()) != q_)
      throw std::invalid_argument("constraint degree must equal q");
    std::set<int> seen;
    for (int slot = 0; slot < q_; ++slot) {
      const int v = members[slot];
      if (v < 0 || v >= num_vars_) throw std::invalid_argument("variable index out of range");
      if (!seen.insert(v).second)
        throw std::invalid_argument("repeated variable in constraint");
      var_edges_[v].push_back({c, slot});
    }
  }
}

namespace {

int isqrt_exact(int q) {
  const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(q))));
  return r * r == q ? r : -1;
}

}  // namespace

FactorGraph build_structure(StructureKind kind, int q) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  const int n = q * q;
  auto var = [q](int i, int j) { return i * q + j; };

  std::vector<std::vector<int>> cons;
  for (int i = 0; i < q; ++i) {  // rows
    std::vector<int> c(q);
    for (int j = 0; j < q; ++j) c[j] = var(i, j);
    cons.push_back(std::move(c));
  }
  for (int j = 0; j < q; ++j) {  // columns
    std::vector<int> c(q);
    for (int i = 0; i < q; ++i) c[i] = var(i, j);
    cons.push_back(std::move(c));
  }

  switch (kind) {
    case StructureKind::latin:
      break;
    case StructureKind::sudoku: {
      const int r = isqrt_exact(q);
      if (r < 0) throw std::invalid_argument("sudoku needs square q");
      for (int bi = 0; bi < r; ++bi)
        for (int bj = 0; bj < r; ++bj) {
          std::vector<int> c;
          c.reserve(q);
          for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) c.push_back(var(bi * r + i, bj * r + j));
          cons.push_back(std::move(c));
        }
      break;
    }
    case StructureKind::semi_pandiagonal:
    case StructureKind::pandiagonal: {
      for (int j = 0; j < q; ++j) {  // broken right diagonals (i, j+i)
        std::vector<int> c(q);
        for (int i = 0; i < q; ++i) c[i] = var(i, (j + i) % q);
        cons.push_back(std::move(c));
      }
      if (kind == StructureKind::pandiagonal) {
        for (int j = 0; j < q; ++j) {  // broken left diagonals (i, j-i-1)
          std::vector<int> c(q);
          for (int i = 0; i < q; ++i) c[i] = var(i, ((j - i - 1) % q + q) % q);
          cons.push_back(std::move(c));
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("build_structure expects a named square structure");
  }
  return FactorGraph(q, n, std::move(cons), kind);
}

FactorGraph build_random_regular(int d_v, int q, int n_vars, std::uint64_t seed) {
  if (d_v < 1 || n_vars < q) throw std::invalid_argument("bad ensemble parameters");
  const long edges = static_cast<long>(d_v) * n_vars;
  if (edges % q != 0) throw std::invalid_argument("d_v * n_vars must be divisible by q");
  const int n_cons = static_cast<int>(edges / q);

  Rng rng(seed);
  std::vector<int> stubs;
  stubs.reserve(edges);
  for (int v = 0; v < n_vars; ++v)
    for (int k = 0; k < d_v; ++k) stubs.push_back(v);
  rng.shuffle(stubs.begin(), stubs.end());

  std::vector<std::vector<int>> cons(n_cons);
  for (int c = 0; c < n_cons; ++c)
    cons[c].assign(stubs.begin() + static_cast<long>(c) * q,
                   stubs.begin() + static_cast<long>(c + 1) * q);

  // Swap away duplicate memberships; swaps preserve both degree profiles.
  const long max_passes = 100L * n_vars;
  for (long pass = 0; pass < max_passes; ++pass) {
    bool clean = true;
    for (int c = 0; c < n_cons; ++c) {
      auto& members = cons[c];
      for (int s = 0; s < q; ++s) {
        bool dup = false;
        for (int t = 0; t < s; ++t)
          if (members[t] == members[s]) { dup = true; break; }
        if (!dup) continue;
        clean = false;
        const int c2 = rng.below(n_cons);
        const int s2 = rng.below(q);
        std::swap(members[s], cons[c2][s2]);
      }
    }
    if (clean) return FactorGraph(q, n_vars, std::move(cons), StructureKind::random_regular);
  }
  throw ConstructionError("random regular graph: duplicate repair did not converge");
}

bool validate(const FactorGraph& graph, const Codeword& word) {
  if (static_cast<int>(word.size()) != graph.num_vars())
    throw std::invalid_argument("codeword length mismatch");
  const Mask full = full_mask(graph.q());
  for (int c = 0; c < graph.num_constraints(); ++c) {
    Mask seen = 0;
    for (int v : graph.constraint(c)) {
      const int s = word[v];
      if (s < 1 || s > graph.q()) return false;
      seen |= symbol_bit(s);
    }
    if (seen != full) return false;
  }
  return true;
}

}  // namespace permcode
