#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "permcode/masks.hpp"

namespace permcode {

using Codeword = std::vector<int>;  // symbols in 1..q

enum class StructureKind {
  latin,
  sudoku,
  pandiagonal,
  semi_pandiagonal,
  random_regular,
  custom,
};

const char* to_string(StructureKind kind);
StructureKind structure_from_string(const std::string& name);

// Thrown when a graph cannot be built from the requested parameters.
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grid with per-cell candidate sets; a singleton cell is determined.
struct PartialGrid {
  int q = 0;
  std::vector<Mask> cells;

  static PartialGrid fully_erased(int q, int num_vars) {
    return {q, std::vector<Mask>(num_vars, full_mask(q))};
  }
  static PartialGrid from_codeword(int q, const Codeword& word);

  bool all_determined() const {
    for (Mask m : cells)
      if (!is_singleton(m)) return false;
    return true;
  }
  // Requires all_determined().
  Codeword to_codeword() const;
};

// Code definition: every constraint requires its q variables to take all q
// symbol values exactly once (constraint degree d_c = q).
class FactorGraph {
 public:
  struct VarEdge {
    int constraint;
    int slot;  // position of the variable inside the constraint
  };

  FactorGraph(int q, int num_vars, std::vector<std::vector<int>> constraints,
              StructureKind tag);

  int q() const { return q_; }
  int num_vars() const { return num_vars_; }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  int num_edges() const { return num_constraints() * q_; }
  StructureKind structure() const { return tag_; }

  const std::vector<int>& constraint(int c) const { return constraints_[c]; }
  const std::vector<VarEdge>& edges_of(int v) const { return var_edges_[v]; }
  int degree_of(int v) const { return static_cast<int>(var_edges_[v].size()); }

  // Flat edge index, constraint-major.
  int edge_index(int c, int slot) const { return c * q_ + slot; }

 private:
  int q_;
  int num_vars_;
  std::vector<std::vector<int>> constraints_;
  std::vector<std::vector<VarEdge>> var_edges_;
  StructureKind tag_;
};

// Square structures on the q x q grid, cell (i,j) -> variable i*q + j.
// Constraint order: rows, columns, then subsquares (sudoku) or broken
// diagonals (right diagonals, then left for pandiagonal).
FactorGraph build_structure(StructureKind kind, int q);

// Configuration-model graph with every variable degree d_v and every
// constraint degree q; duplicate memberships repaired by edge swaps.
FactorGraph build_random_regular(int d_v, int q, int n_vars, std::uint64_t seed);

// True iff every constraint's variables form a permutation of 1..q.
bool validate(const FactorGraph& graph, const Codeword& word);

}  // namespace permcode
