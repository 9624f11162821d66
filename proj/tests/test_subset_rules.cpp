#include <doctest.h>

#include <functional>
#include <vector>

#include "permcode/rng.hpp"
#include "permcode/subset_rules.hpp"

using namespace permcode;

namespace {

Mask mask_of(std::initializer_list<int> symbols) {
  Mask m = 0;
  for (int s : symbols) m |= symbol_bit(s);
  return m;
}

// reference: permutation search over rows
bool admits_permutation(const SubsetMatrix& a) {
  std::vector<int> perm;
  Mask used = 0;
  std::function<bool(int)> rec = [&](int row) {
    if (row == a.q) return true;
    Mask opts = a.rows[row] & ~used;
    while (opts) {
      const Mask bit = opts & (~opts + 1u);
      used |= bit;
      if (rec(row + 1)) { used &= ~bit; return true; }
      used &= ~bit;
      opts ^= bit;
    }
    return false;
  };
  return rec(0);
}

Mask brute_support(const SubsetMatrix& a, int edge) {
  // symbols v such that some consistent permutation assigns v to `edge`
  Mask out = 0;
  std::function<void(int, Mask, Mask)> rec = [&](int row, Mask used, Mask edge_bit) {
    if (row == a.q) {
      out |= edge_bit;
      return;
    }
    Mask opts = a.rows[row] & ~used;
    while (opts) {
      const Mask bit = opts & (~opts + 1u);
      rec(row + 1, used | bit, row == edge ? bit : edge_bit);
      opts ^= bit;
    }
  };
  rec(0, 0, 0);
  return out;
}

}  // namespace

TEST_CASE("worked example: trellis output") {
  SubsetMatrix a{4, {mask_of({1, 2, 3, 4}), mask_of({1, 3}), mask_of({1, 2}), mask_of({1, 2})}};
  const auto res = constraint_update_subsets_trellis(a);
  REQUIRE_FALSE(res.contradiction);
  CHECK(res.messages.rows[0] == mask_of({4}));
  CHECK(res.messages.rows[1] == mask_of({3}));
  CHECK(res.messages.rows[2] == mask_of({1, 2}));
  CHECK(res.messages.rows[3] == mask_of({1, 2}));
}

TEST_CASE("worked example: direct union rule") {
  SubsetMatrix a{4, {mask_of({1, 2, 3, 4}), mask_of({1, 3}), mask_of({1, 2}), mask_of({1, 2})}};
  const SubsetMatrix out = constraint_update_subsets_direct(a);
  CHECK(out.rows[0] == mask_of({4}));
  CHECK(out.rows[1] == mask_of({3, 4}));
  CHECK(out.rows[2] == mask_of({1, 2, 3, 4}));
  CHECK(out.rows[3] == mask_of({1, 2, 3, 4}));
}

TEST_CASE("all-full rows stay full; a permutation of singletons is fixed") {
  SubsetMatrix full{3, {7, 7, 7}};
  const auto t = constraint_update_subsets_trellis(full);
  CHECK(t.messages.rows == std::vector<Mask>{7, 7, 7});
  CHECK(constraint_update_subsets_direct(full).rows == std::vector<Mask>{7, 7, 7});

  SubsetMatrix perm{3, {mask_of({2}), mask_of({3}), mask_of({1})}};
  const auto tp = constraint_update_subsets_trellis(perm);
  CHECK(tp.messages.rows == perm.rows);
  CHECK(constraint_update_subsets_direct(perm).rows == perm.rows);
}

TEST_CASE("pigeonhole contradiction") {
  SubsetMatrix a{3, {mask_of({1, 2}), mask_of({1, 2}), mask_of({1, 2})}};
  const auto res = constraint_update_subsets_trellis(a);
  CHECK(res.contradiction);
  for (Mask m : res.messages.rows) CHECK(m == 0);
}

TEST_CASE("exhaustive q=3: trellis = brute force; direct & self = trellis") {
  int with_perm = 0;
  for (Mask r0 = 1; r0 < 8; ++r0)
    for (Mask r1 = 1; r1 < 8; ++r1)
      for (Mask r2 = 1; r2 < 8; ++r2) {
        SubsetMatrix a{3, {r0, r1, r2}};
        const auto t = constraint_update_subsets_trellis(a);
        const SubsetMatrix d = constraint_update_subsets_direct(a);
        if (!admits_permutation(a)) {
          CHECK(t.contradiction);
          continue;
        }
        ++with_perm;
        REQUIRE_FALSE(t.contradiction);
        for (int i = 0; i < 3; ++i) {
          CHECK(t.messages.rows[i] == brute_support(a, i));
          CHECK(t.messages.rows[i] == (d.rows[i] & a.rows[i]));
        }
      }
  CHECK(with_perm > 0);
}

TEST_CASE("random q=4..6: outputs shrink, match brute force, monotone") {
  Rng rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    const int q = 4 + trial % 3;
    SubsetMatrix a{q, {}};
    a.rows.resize(q);
    for (auto& r : a.rows) r = 1 + rng.below((1 << q) - 1);
    const auto t = constraint_update_subsets_trellis(a);
    if (t.contradiction) {
      CHECK_FALSE(admits_permutation(a));
      continue;
    }
    const SubsetMatrix d = constraint_update_subsets_direct(a);
    for (int i = 0; i < q; ++i) {
      CHECK((t.messages.rows[i] & ~a.rows[i]) == 0);  // subsets of the input
      CHECK(t.messages.rows[i] == brute_support(a, i));
      CHECK(t.messages.rows[i] == (d.rows[i] & a.rows[i]));
    }
    // monotone: shrink one row, outputs can only shrink
    SubsetMatrix smaller = a;
    const int row = rng.below(q);
    if (cardinality(smaller.rows[row]) > 1) {
      Mask m = smaller.rows[row];
      int drop = rng.below(cardinality(m));
      for (int s = 1; s <= q; ++s)
        if (m & symbol_bit(s) && drop-- == 0) smaller.rows[row] &= ~symbol_bit(s);
      const auto ts = constraint_update_subsets_trellis(smaller);
      if (!ts.contradiction)
        for (int i = 0; i < q; ++i)
          CHECK((ts.messages.rows[i] & ~t.messages.rows[i]) == 0);
    }
  }
}

TEST_CASE("idempotence at a fixed point") {
  SubsetMatrix a{4, {mask_of({1, 2, 3, 4}), mask_of({1, 3}), mask_of({1, 2}), mask_of({1, 2})}};
  auto once = constraint_update_subsets_trellis(a);
  auto twice = constraint_update_subsets_trellis(once.messages);
  CHECK(once.messages == twice.messages);
}
