#include "permcode/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace permcode {

double ScaledValue::value() const {
  return mantissa == 0.0 ? 0.0 : mantissa * std::exp(log_scale);
}

namespace {

int checked_dim(const MatrixRef& m, int max_q) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  const int q = static_cast<int>(m.rows());
  if (q < 1 || q > max_q) throw std::invalid_argument("matrix dimension out of guard range");
  if ((m.array() < 0).any()) throw std::invalid_argument("entries must be nonnegative");
  return q;
}

std::vector<std::vector<std::uint32_t>> states_by_level(int q) {
  std::vector<std::vector<std::uint32_t>> levels(q + 1);
  for (std::uint32_t s = 0; s < (1u << q); ++s)
    levels[std::popcount(s)].push_back(s);
  return levels;
}

struct Pass {
  std::vector<double> acc;          // indexed by column subset
  std::vector<double> level_log;    // cumulative log scale per level
};

// forward: acc[S] ~ sum over paths root->S of entry products, rows 0..|S|-1
Pass forward_pass(const MatrixRef& m, int q,
                  const std::vector<std::vector<std::uint32_t>>& levels,
                  TrellisStats* stats) {
  Pass f;
  f.acc.assign(std::size_t{1} << q, 0.0);
  f.level_log.assign(q + 1, 0.0);
  f.acc[0] = 1.0;
  for (int level = 0; level < q; ++level) {
    for (std::uint32_t s : levels[level]) {
      const double val = f.acc[s];
      if (val == 0.0) continue;
      for (int j = 0; j < q; ++j) {
        if (s >> j & 1u) continue;
        const double w = m(level, j);
        if (level == 0) {
          f.acc[s | (1u << j)] += w;  // root value is the unit, no multiply
        } else {
          f.acc[s | (1u << j)] += val * w;
          if (stats) ++stats->multiplications;
        }
      }
    }
    double sum = 0.0;
    for (std::uint32_t s : levels[level + 1]) sum += f.acc[s];
    if (sum > 0.0) {
      const double inv = 1.0 / sum;
      for (std::uint32_t s : levels[level + 1]) f.acc[s] *= inv;
      f.level_log[level + 1] = f.level_log[level] + std::log(sum);
    } else {
      f.level_log[level + 1] = f.level_log[level];
    }
  }
  return f;
}

// backward: acc[S] ~ sum over paths S->toor of entry products, rows |S|..q-1
Pass backward_pass(const MatrixRef& m, int q,
                   const std::vector<std::vector<std::uint32_t>>& levels,
                   TrellisStats* stats) {
  Pass b;
  b.acc.assign(std::size_t{1} << q, 0.0);
  b.level_log.assign(q + 1, 0.0);
  b.acc[(1u << q) - 1] = 1.0;
  for (int level = q - 1; level >= 0; --level) {
    for (std::uint32_t s : levels[level]) {
      double sum = 0.0;
      for (int j = 0; j < q; ++j) {
        if (s >> j & 1u) continue;
        const double w = m(level, j);
        if (level == q - 1) {
          sum += w;  // toor value is the unit, no multiply
        } else {
          const double down = b.acc[s | (1u << j)];
          if (down != 0.0) {
            sum += w * down;
            if (stats) ++stats->multiplications;
          }
        }
      }
      b.acc[s] = sum;
    }
    double total = 0.0;
    for (std::uint32_t s : levels[level]) total += b.acc[s];
    if (total > 0.0) {
      const double inv = 1.0 / total;
      for (std::uint32_t s : levels[level]) b.acc[s] *= inv;
      b.level_log[level] = b.level_log[level + 1] + std::log(total);
    } else {
      b.level_log[level] = b.level_log[level + 1];
    }
  }
  return b;
}

}  // namespace

double perm_naive(const MatrixRef& m) {
  const int q = checked_dim(m, 10);
  std::vector<int> cols(q);
  std::iota(cols.begin(), cols.end(), 0);
  double sum = 0.0;
  do {
    double prod = 1.0;
    for (int i = 0; i < q; ++i) prod *= m(i, cols[i]);
    sum += prod;
  } while (std::next_permutation(cols.begin(), cols.end()));
  return sum;
}

ScaledValue perm_trellis(const MatrixRef& m, TrellisStats* stats) {
  const int q = checked_dim(m, kTrellisMaxDim);
  const auto levels = states_by_level(q);
  const Pass f = forward_pass(m, q, levels, stats);
  return {f.acc[(1u << q) - 1], f.level_log[q]};
}

ScaledCofactors cofactor_permanents_scaled(const MatrixRef& m, TrellisStats* stats) {
  const int q = checked_dim(m, kTrellisMaxDim);
  const auto levels = states_by_level(q);
  const Pass f = forward_pass(m, q, levels, stats);
  const Pass b = backward_pass(m, q, levels, stats);

  ScaledCofactors out;
  out.mantissa = Eigen::MatrixXd::Zero(q, q);
  out.row_log_scale.resize(q);
  // cofactor (i,j): paths using rows 0..i-1 below S, skip row i on the edge
  // labeled j, rows i+1..q-1 above.
  for (int i = 0; i < q; ++i) {
    out.row_log_scale(i) = f.level_log[i] + b.level_log[i + 1];
    for (std::uint32_t s : levels[i]) {
      const double fs = f.acc[s];
      if (fs == 0.0) continue;
      for (int j = 0; j < q; ++j) {
        if (s >> j & 1u) continue;
        out.mantissa(i, j) += fs * b.acc[s | (1u << j)];
      }
    }
  }
  out.permanent = {f.acc[(1u << q) - 1], f.level_log[q]};
  return out;
}

Eigen::MatrixXd cofactor_permanents(const MatrixRef& m, TrellisStats* stats) {
  const ScaledCofactors sc = cofactor_permanents_scaled(m, stats);
  const int q = static_cast<int>(sc.mantissa.rows());
  Eigen::MatrixXd out(q, q);
  for (int i = 0; i < q; ++i)
    out.row(i) = sc.mantissa.row(i) * std::exp(sc.row_log_scale(i));
  return out;
}

SoftConstraintUpdate constraint_update_soft(const MatrixRef& incoming) {
  const int q = checked_dim(incoming, kTrellisMaxDim);
  SoftConstraintUpdate res;
  res.messages = Eigen::MatrixXd::Zero(q, q);

  // Row scaling does not affect the normalized output; normalize rows first
  // for numerical range. An all-zero row forces perm = 0.
  Eigen::MatrixXd a = incoming;
  for (int i = 0; i < q; ++i) {
    const double s = a.row(i).sum();
    if (s <= 0.0) {
      res.contradiction = true;
      return res;
    }
    a.row(i) /= s;
  }

  const ScaledCofactors sc = cofactor_permanents_scaled(a, nullptr);
  if (sc.permanent.mantissa == 0.0) {
    res.contradiction = true;
    return res;
  }
  for (int i = 0; i < q; ++i) {
    const double row_sum = sc.mantissa.row(i).sum();
    if (row_sum <= 0.0) {
      res.contradiction = true;
      return res;
    }
    res.messages.row(i) = sc.mantissa.row(i) / row_sum;
  }
  return res;
}

}  // namespace permcode
