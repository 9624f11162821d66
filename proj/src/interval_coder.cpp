#include "permcode/interval_coder.hpp"

#include <memory>
#include <random>

namespace permcode {

BitSource::BitSource(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1) throw std::invalid_argument("bits must be 0 or 1");
}

BitSource BitSource::seeded(std::uint64_t seed) {
  BitSource src;
  auto eng = std::make_shared<std::mt19937_64>(seed);
  auto cache = std::make_shared<std::pair<std::uint64_t, int>>(0, 0);
  src.gen_ = [eng, cache]() {
    if (cache->second == 0) {
      cache->first = (*eng)();
      cache->second = 64;
    }
    const int bit = static_cast<int>(cache->first & 1u);
    cache->first >>= 1;
    --cache->second;
    return bit;
  };
  return src;
}

int BitSource::next() {
  if (pos_ == bits_.size()) {
    if (!gen_) throw SourceExhausted();
    bits_.push_back(static_cast<std::uint8_t>(gen_()));
  }
  return bits_[pos_++];
}

void BitSource::seek(std::size_t pos) {
  if (pos > bits_.size()) throw std::invalid_argument("seek past generated bits");
  pos_ = pos;
}

std::vector<std::uint8_t> BitSource::consumed_prefix() const {
  return {bits_.begin(), bits_.begin() + static_cast<long>(pos_)};
}

int RationalInterval::consensus_bit() const {
  if (2 * hi <= den) return 0;
  if (2 * lo >= den) return 1;
  return -1;
}

void RationalInterval::rescale(int bit) {
  lo = 2 * lo - bit * den;
  hi = 2 * hi - bit * den;
}

void RationalInterval::normalize() {
  BigInt g = gcd(gcd(lo, hi), den);
  if (g > 1) {
    lo /= g;
    hi /= g;
    den /= g;
  }
}

bool RationalInterval::contains_dyadic(const BigInt& num, int bits) const {
  // [num/2^bits, (num+1)/2^bits) inside [lo/den, hi/den)
  return lo << bits <= num * den && (num + 1) * den <= hi << bits;
}

bool RationalInterval::disjoint(const RationalInterval& other) const {
  // hi/den <= other.lo/other.den or vice versa
  return hi * other.den <= other.lo * den || other.hi * den <= lo * other.den;
}

int DrawCoder::draw_uniform(int k, BitSource& source) {
  if (k < 1) throw std::invalid_argument("draw cardinality must be positive");
  if (k == 1) return 0;

  const BigInt width = c_.hi - c_.lo;
  const BigInt den_k = c_.den * k;
  const BigInt base = c_.lo * k;

  auto part_contains_d = [&](int i) {
    const BigInt part_lo = base + i * width;
    return (part_lo << d_bits_) <= d_num_ * den_k &&
           (d_num_ + 1) * den_k <= ((part_lo + width) << d_bits_);
  };
  auto candidate = [&]() {
    // index of the part containing D's lower end
    const BigInt num = d_num_ * c_.den - (c_.lo << d_bits_);
    BigInt idx = (num * k) / (width << d_bits_);
    if (idx < 0) idx = 0;
    if (idx >= k) idx = k - 1;
    return static_cast<int>(idx);
  };

  int i = candidate();
  while (!part_contains_d(i)) {
    const int bit = source.next();
    ++bits_consumed_;
    d_num_ = (d_num_ << 1) | bit;
    ++d_bits_;
    i = candidate();
  }

  c_.lo = base + i * width;
  c_.hi = c_.lo + width;
  c_.den = den_k;
  retire_consensus();
  c_.normalize();
  return i;
}

void DrawCoder::retire_consensus() {
  for (;;) {
    const int bit = c_.consensus_bit();
    if (bit < 0) return;
    // D inside C, so D's top pending bit equals the consensus bit
    if (d_bits_ < 1) throw std::logic_error("consensus without a pending bit");
    const int top = static_cast<int>((d_num_ >> (d_bits_ - 1)) & 1);
    if (top != bit) throw std::logic_error("pending bit disagrees with consensus");
    d_num_ -= BigInt(top) << (d_bits_ - 1);
    --d_bits_;
    retired_ = (retired_ << 1) | bit;
    ++retired_count_;
    c_.rescale(bit);
  }
}

RationalInterval DrawCoder::absolute_interval() const {
  RationalInterval abs;
  abs.den = c_.den << retired_count_;
  abs.lo = retired_ * c_.den + c_.lo;
  abs.hi = retired_ * c_.den + c_.hi;
  return abs;
}

void ReplayCoder::refine(int k, int index) {
  if (k < 1 || index < 0 || index >= k) throw std::invalid_argument("bad refinement");
  if (k == 1) return;
  const BigInt width = c_.hi - c_.lo;
  c_.lo = c_.lo * k + index * width;
  c_.hi = c_.lo + width;
  c_.den *= k;
  for (;;) {
    const int bit = c_.consensus_bit();
    if (bit < 0) break;
    emitted_.push_back(static_cast<std::uint8_t>(bit));
    c_.rescale(bit);
  }
  c_.normalize();
}

std::vector<std::uint8_t> ReplayCoder::flush_tail() const {
  // leftmost-shortest dyadic interval contained in the pending C
  for (int j = 0;; ++j) {
    const BigInt scaled_lo = c_.lo << j;
    BigInt t = scaled_lo / c_.den;
    if (t * c_.den < scaled_lo) ++t;  // ceil
    if ((t + 1) * c_.den <= (c_.hi << j)) {
      std::vector<std::uint8_t> bits(j);
      for (int b = 0; b < j; ++b)
        bits[b] = static_cast<std::uint8_t>((t >> (j - 1 - b)) & 1);
      return bits;
    }
  }
}

}  // namespace permcode
