#include "permcode/subset_rules.hpp"

#include <stdexcept>

namespace permcode {

namespace {

void check_input(const SubsetMatrix& a, int max_q) {
  if (a.q < 1 || a.q > max_q) throw std::invalid_argument("alphabet size out of guard range");
  if (static_cast<int>(a.rows.size()) != a.q)
    throw std::invalid_argument("subset matrix must have q rows");
  for (Mask m : a.rows)
    if (m == 0 || (m & ~full_mask(a.q)) != 0)
      throw std::invalid_argument("rows must be nonempty masks over 1..q");
}

}  // namespace

SubsetMatrix constraint_update_subsets_direct(const SubsetMatrix& incoming) {
  check_input(incoming, 12);
  const int q = incoming.q;
  const Mask full = full_mask(q);
  SubsetMatrix out{q, std::vector<Mask>(q, full)};
  // families are indexed by bitmasks over row indices
  const std::uint32_t n_families = 1u << q;
  for (std::uint32_t fam = 1; fam < n_families; ++fam) {
    Mask u = 0;
    for (int i = 0; i < q; ++i)
      if (fam >> i & 1u) u |= incoming.rows[i];
    if (cardinality(u) != std::popcount(fam)) continue;
    for (int j = 0; j < q; ++j)
      if (!(fam >> j & 1u)) out.rows[j] &= ~u;
  }
  return out;
}

SubsetUpdateResult constraint_update_subsets_trellis(const SubsetMatrix& incoming) {
  check_input(incoming, kMaxAlphabet);
  const int q = incoming.q;
  const std::uint32_t n_states = 1u << q;
  const Mask full = full_mask(q);

  // fwd[S]: rows 0..|S|-1 can cover the column set S
  std::vector<char> fwd(n_states, 0);
  fwd[0] = 1;
  for (std::uint32_t s = 0; s < n_states; ++s) {
    if (!fwd[s] || s == full) continue;
    const int level = std::popcount(s);
    Mask options = incoming.rows[level] & ~s;
    while (options) {
      const Mask bit = options & (~options + 1u);
      fwd[s | bit] = 1;
      options ^= bit;
    }
  }

  SubsetUpdateResult res;
  res.messages.q = q;
  res.messages.rows.assign(q, 0);
  if (!fwd[full]) {
    res.contradiction = true;
    return res;
  }

  // bwd[S]: rows |S|..q-1 can cover the complement of S
  std::vector<char> bwd(n_states, 0);
  bwd[full] = 1;
  for (std::uint32_t s = n_states - 1; s-- > 0;) {
    const int level = std::popcount(s);
    Mask options = incoming.rows[level] & ~s;
    char ok = 0;
    while (options) {
      const Mask bit = options & (~options + 1u);
      if (bwd[s | bit]) { ok = 1; break; }
      options ^= bit;
    }
    bwd[s] = ok;
  }

  for (std::uint32_t s = 0; s < n_states; ++s) {
    if (!fwd[s] || s == full) continue;
    const int level = std::popcount(s);
    Mask options = incoming.rows[level] & ~s;
    while (options) {
      const Mask bit = options & (~options + 1u);
      if (bwd[s | bit]) res.messages.rows[level] |= bit;
      options ^= bit;
    }
  }
  return res;
}

}  // namespace permcode
