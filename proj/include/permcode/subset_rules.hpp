#pragma once

#include <vector>

#include "permcode/masks.hpp"

namespace permcode {

// Incoming/outgoing messages of one permutation constraint on the erasure
// channel: row i is the candidate set carried by edge i.
struct SubsetMatrix {
  int q = 0;
  std::vector<Mask> rows;

  bool operator==(const SubsetMatrix&) const = default;
};

struct SubsetUpdateResult {
  SubsetMatrix messages;
  bool contradiction = false;  // no permutation is consistent with the rows
};

// Extrinsic union rule exactly as printed: for outgoing edge j, remove the
// union of every family of other rows whose union cardinality equals the
// family size. Single pass over all 2^q row families; q <= 12.
SubsetMatrix constraint_update_subsets_direct(const SubsetMatrix& incoming);

// Trellis realization: b_ij = 1 iff a_ij = 1 and some permutation consistent
// with all rows passes through (i,j). Equals the direct rule intersected with
// the incoming row whenever a consistent permutation exists. On contradiction
// all rows come back empty. q <= 25.
SubsetUpdateResult constraint_update_subsets_trellis(const SubsetMatrix& incoming);

}  // namespace permcode
