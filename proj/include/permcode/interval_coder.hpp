#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace permcode {

using BigInt = boost::multiprecision::cpp_int;

struct SourceExhausted : std::runtime_error {
  SourceExhausted() : std::runtime_error("bit source exhausted") {}
};

// Replayable bit sequence with a cursor. Seeded sources extend on demand and
// keep every generated bit, so rolling back and re-reading is exact.
class BitSource {
 public:
  explicit BitSource(std::vector<std::uint8_t> bits);
  static BitSource seeded(std::uint64_t seed);

  int next();
  std::size_t position() const { return pos_; }
  void seek(std::size_t pos);
  // Bits 0..position(), the consumed prefix so far.
  std::vector<std::uint8_t> consumed_prefix() const;

 private:
  BitSource() = default;
  std::vector<std::uint8_t> bits_;
  std::size_t pos_ = 0;
  std::function<int()> gen_;
};

// Choice interval C = [lo/den, hi/den) refined by uniform k-ary selections.
// Exact rational arithmetic; consensus bits (C inside a dyadic half) are
// retired by rescaling so the integers stay proportional to the pending
// ambiguity rather than the stream length.
struct RationalInterval {
  BigInt lo = 0;
  BigInt hi = 1;
  BigInt den = 1;

  bool is_unit() const { return lo == 0 && hi == den; }
  // -1: not in a half; 0/1: C fits inside that half.
  int consensus_bit() const;
  void rescale(int bit);  // C <- 2C - bit
  void normalize();       // divide out gcd
  bool contains_dyadic(const BigInt& num, int bits) const;
  bool disjoint(const RationalInterval& other) const;
};

// Encoder-side coder: converts source bits into uniform k-ary choices.
// Tracks the dyadic interval D spanned by the pending (consumed, unretired)
// source bits; invariant D inside C after every completed draw.
class DrawCoder {
 public:
  // k = 1 consumes nothing and returns 0. Otherwise partitions C into k
  // equal parts, reads source bits (halving D) until D lies inside one part,
  // makes that part the new C and returns its index.
  int draw_uniform(int k, BitSource& source);

  std::uint64_t bits_consumed() const { return bits_consumed_; }
  int pending_bits() const { return d_bits_; }
  const RationalInterval& interval() const { return c_; }
  // C re-expanded by the retired consensus prefix; distinct draw paths have
  // disjoint absolute intervals.
  RationalInterval absolute_interval() const;

 private:
  void retire_consensus();

  RationalInterval c_;
  BigInt d_num_ = 0;  // pending source bits as a dyadic interval
  int d_bits_ = 0;
  BigInt retired_ = 0;
  std::uint64_t retired_count_ = 0;
  std::uint64_t bits_consumed_ = 0;
};

// Recovery-side coder: replays the encoder's k-ary choices and emits a source
// bit once every real number in C agrees on it (the consensus rule).
class ReplayCoder {
 public:
  void refine(int k, int index);
  // Bits emitted so far (consensus only).
  const std::vector<std::uint8_t>& emitted() const { return emitted_; }
  // Tail bits of the leftmost-shortest dyadic interval contained in the
  // pending C; appended to emitted() in standalone mode. Does not mutate.
  std::vector<std::uint8_t> flush_tail() const;
  const RationalInterval& interval() const { return c_; }

 private:
  RationalInterval c_;
  std::vector<std::uint8_t> emitted_;
};

}  // namespace permcode
