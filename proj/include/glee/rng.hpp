#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace glee {

/// One step of the splitmix64 generator; also used to mix seed material.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent child seed from a master seed, a stream tag and a
/// counter. Any (stream, counter) cell can be re-run in isolation.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t counter = 0) {
  std::uint64_t s = splitmix64(master ^ 0x6a09e667f3bcc909ULL);
  s = splitmix64(s ^ stream);
  return splitmix64(s ^ counter);
}

// Stream tags for derive_seed. Fixed values keep every derived stream stable
// across releases.
namespace stream {
inline constexpr std::uint64_t eigensolver = 0x01;
inline constexpr std::uint64_t pair_sample = 0x02;
inline constexpr std::uint64_t gmm_subsample = 0x03;
inline constexpr std::uint64_t split = 0x04;
inline constexpr std::uint64_t negative_sample = 0x05;
inline constexpr std::uint64_t generator = 0x06;
inline constexpr std::uint64_t trial = 0x07;
}  // namespace stream

/// Deterministic random source. All distribution code lives here so the
/// produced streams do not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [0, bound), unbiased. bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::next_below: bound is 0");
    const std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      const std::uint64_t r = gen_();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller, one spare value cached.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// k distinct indices drawn uniformly from [0, population) (Floyd's
  /// algorithm); returned sorted ascending.
  std::vector<std::uint64_t> sample_indices(std::uint64_t population,
                                            std::uint64_t k) {
    if (k > population)
      throw std::invalid_argument("Rng::sample_indices: k > population");
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(k));
    for (std::uint64_t j = population - k; j < population; ++j) {
      const std::uint64_t t = next_below(j + 1);
      chosen.insert(chosen.contains(t) ? j : t);
    }
    std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace glee
