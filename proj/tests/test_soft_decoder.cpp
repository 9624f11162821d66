#include <doctest.h>

#include "permcode/enumeration.hpp"
#include "permcode/erasure_decoder.hpp"
#include "permcode/rng.hpp"
#include "permcode/soft_decoder.hpp"

using namespace permcode;

namespace {

Eigen::VectorXd atomic(int q, int symbol) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(q);
  v(symbol - 1) = 1.0;
  return v;
}

Mask support_of(const Eigen::VectorXd& v) {
  Mask m = 0;
  for (int j = 0; j < v.size(); ++j)
    if (v(j) > 0.0) m |= symbol_bit(j + 1);
  return m;
}

PartialGrid random_erasure(const Codeword& word, int q, double eps, Rng& rng) {
  PartialGrid g = PartialGrid::from_codeword(q, word);
  for (auto& cell : g.cells)
    if (rng.unit() < eps) cell = full_mask(q);
  return g;
}

}  // namespace

TEST_CASE("variable update examples") {
  const Eigen::VectorXd prior = atomic(4, 3);
  Eigen::VectorXd incoming = Eigen::VectorXd::Constant(4, 0.25);
  auto out = variable_update_soft(prior, {incoming});
  REQUIRE(out.has_value());
  CHECK(out->isApprox(atomic(4, 3), 1e-12));

  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(3, 1.0 / 3);
  Eigen::VectorXd m(3);
  m << 0.2, 0.5, 0.3;
  out = variable_update_soft(uniform, {m});
  REQUIRE(out.has_value());
  CHECK(out->isApprox(m, 1e-12));

  Eigen::VectorXd p(3), inc(3);
  p << 0.5, 0.5, 0.0;
  inc << 0.5, 0.0, 0.5;
  out = variable_update_soft(p, {inc});
  REQUIRE(out.has_value());
  CHECK((*out)(0) == doctest::Approx(1.0));

  Eigen::VectorXd q1(2), q2(2);
  q1 << 1.0, 0.0;
  q2 << 0.0, 1.0;
  CHECK_FALSE(variable_update_soft(q1, {q2}).has_value());
}

TEST_CASE("noiseless codeword priors decode in one iteration") {
  for (StructureKind kind :
       {StructureKind::latin, StructureKind::sudoku, StructureKind::semi_pandiagonal}) {
    const int q = kind == StructureKind::sudoku ? 4 : kind == StructureKind::latin ? 3 : 5;
    const FactorGraph g = build_structure(kind, q);
    const Codeword word = sample_codeword(g, 3);
    const auto res = decode_soft(g, priors_from_grid(PartialGrid::from_codeword(q, word)));
    CHECK(res.status == SoftStatus::decoded);
    CHECK(res.iterations == 1);
    CHECK(res.hard_decision == word);
  }
}

TEST_CASE("noiseless decoding is a fixed point at q = 9") {
  const FactorGraph g = build_structure(StructureKind::sudoku, 9);
  const Codeword word = sample_codeword(g, 17);
  SoftPropagator prop(g, priors_from_grid(PartialGrid::from_codeword(9, word)));
  prop.sweep();
  const double delta = prop.sweep();  // second sweep must not move
  CHECK(delta < 1e-12);
  CHECK(prop.hard_decision() == word);
}

TEST_CASE("forced completion: two atomic cells pin the third in a row") {
  const FactorGraph g = build_structure(StructureKind::latin, 3);
  PartialGrid grid = PartialGrid::fully_erased(3, 9);
  grid.cells[0] = symbol_bit(1);
  grid.cells[1] = symbol_bit(2);
  const auto res = decode_soft(g, priors_from_grid(grid), {5, 1e-8});
  CHECK(support_of(res.marginals[2]) == symbol_bit(3));
}

TEST_CASE("erasure-pattern supports track the subset decoder") {
  // Cell supports coincide sweep by sweep through the subset decoder's fixed
  // point. Message supports are one-sided: the soft constraint update is
  // extrinsic (its support can leave the incoming row), the subset messages
  // are self-intersected, so soft message supports contain the subsets.
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const FactorGraph g = build_structure(StructureKind::sudoku, 4);
    const Codeword word = sample_codeword(g, derive_seed(100, trial));
    const PartialGrid obs = random_erasure(word, 4, 0.45, rng);

    ErasurePropagator fp(g);
    fp.reset(obs);
    int fixed_point_sweeps = 1;
    while (fp.sweep()) ++fixed_point_sweeps;
    REQUIRE_FALSE(fp.contradiction());

    SoftPropagator soft(g, priors_from_grid(obs));
    ErasurePropagator subsets(g);
    subsets.reset(obs);

    for (int sweep = 0; sweep < fixed_point_sweeps; ++sweep) {
      soft.sweep();
      subsets.sweep();
      REQUIRE_FALSE(soft.contradiction());
      REQUIRE_FALSE(subsets.contradiction());
      for (int c = 0; c < g.num_constraints(); ++c)
        for (int s = 0; s < g.q(); ++s) {
          const Mask soft_v2c = support_of(soft.var_to_constraint(c, s));
          CHECK((subsets.var_to_constraint(c, s) & ~soft_v2c) == 0);
        }
      const auto marg = soft.marginals();
      for (int v = 0; v < g.num_vars(); ++v)
        CHECK(support_of(marg[v]) == subsets.cell(v));
    }
    // the soft decoder resolves a cell exactly when the subset decoder does
    const auto marg = soft.marginals();
    for (int v = 0; v < g.num_vars(); ++v)
      CHECK(is_singleton(support_of(marg[v])) == is_singleton(subsets.cell(v)));
  }
}
