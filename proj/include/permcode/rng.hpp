#pragma once

#include <cstdint>
#include <random>

namespace permcode {

// splitmix64 step, used to derive independent stream seeds from a base seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b = 0) {
  return mix_seed(mix_seed(base ^ mix_seed(a)) ^ mix_seed(~b));
}

// mt19937_64 with portable integer draws (std::uniform_int_distribution is
// implementation-defined, which would break cross-platform reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform in [0, n), n >= 1; rejection sampling over the top bits
  int below(int n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = eng_();
    while (x >= limit) x = eng_();
    return static_cast<int>(x % bound);
  }

  bool bit() { return (eng_() >> 63) != 0; }

  // uniform in [0,1) with 53 bits
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  template <typename It>
  void shuffle(It first, It last) {
    const auto n = static_cast<int>(last - first);
    for (int i = n - 1; i > 0; --i) {
      const int j = below(i + 1);
      std::swap(first[i], first[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace permcode
