#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace gpn {

// SplitMix64 (Vigna). The exact constants are part of the keyed-codebook and
// keyed-FMA formats, so do not swap in another generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t operator()() noexcept { return next(); }

 private:
  std::uint64_t state_;
};

// First output of a SplitMix64 stream seeded with `x`.
inline std::uint64_t splitmix64_once(std::uint64_t x) noexcept { return SplitMix64(x).next(); }

// Fisher-Yates, walking i from the back; j = next() mod (i + 1).
template <typename T>
void keyed_shuffle(std::span<T> items, std::uint64_t seed) noexcept {
  SplitMix64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.next() % i);
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace gpn
