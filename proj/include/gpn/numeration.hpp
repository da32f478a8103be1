#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gpn/bigint.hpp"

namespace gpn {

using GpnValue = BigInt;

/// Weight rule R_1, R_2, ... of a generalized positional numeration.
///
/// Supported kinds:
///   - b_radix(b):             R_k = b^(k-1)
///   - factorial:              R_k = k!
///   - fibonacci:              R_k = F(k), F(1) = F(2) = 1
///   - deformed_fibonacci(c):  R_k = sum_i c_i R_{k-i}, R_1 = 1, R_j = 0 for j <= 0
///   - binomial_class(n, k):   R_m = C(m + k - 2, k - 1) for m <= n
///
/// Weights are memoized in a cache shared by copies; the cache is guarded
/// by a mutex so a WeightSystem may be read from several threads.
class WeightSystem {
 public:
  enum class Kind { b_radix, factorial, fibonacci, deformed_fibonacci, binomial_class };

  static WeightSystem b_radix(unsigned base);
  static WeightSystem factorial();
  static WeightSystem fibonacci();
  static WeightSystem deformed_fibonacci(std::vector<unsigned> coefficients);
  static WeightSystem binomial_class(unsigned n, unsigned k);

  Kind kind() const noexcept { return kind_; }
  unsigned base() const noexcept { return base_; }
  const std::vector<unsigned>& coefficients() const noexcept { return coefficients_; }
  unsigned binomial_n() const noexcept { return binomial_n_; }
  unsigned binomial_k() const noexcept { return binomial_k_; }

  /// Longest word this system defines weights for (binomial_class only).
  unsigned max_width() const noexcept;

  /// R_1..R_m.
  std::vector<BigInt> weights(unsigned m) const;

  std::string name() const;

 private:
  struct Cache;

  explicit WeightSystem(Kind kind);
  BigInt next_weight(const std::vector<BigInt>& known) const;

  Kind kind_;
  unsigned base_ = 0;
  std::vector<unsigned> coefficients_;
  unsigned binomial_n_ = 0;
  unsigned binomial_k_ = 0;
  std::shared_ptr<Cache> cache_;
};

/// Binary word a_width ... a_1 over {0, 1}. The string form puts a_width
/// first, so the rightmost character is a_1.
class GpnWord {
 public:
  GpnWord() = default;
  explicit GpnWord(unsigned width) : digits_(width, 0) {}

  static GpnWord from_string(std::string_view text);
  /// Bit k-1 of `mask` becomes a_k.
  static GpnWord from_mask(std::uint64_t mask, unsigned width);

  unsigned width() const noexcept { return static_cast<unsigned>(digits_.size()); }
  /// 1-based: digit(1) is a_1.
  bool digit(unsigned k) const noexcept { return digits_[k - 1] != 0; }
  void set_digit(unsigned k, bool on) noexcept { digits_[k - 1] = on ? 1 : 0; }

  unsigned popcount() const noexcept;
  std::uint64_t to_mask() const;
  std::string to_string() const;

  friend bool operator==(const GpnWord&, const GpnWord&) = default;
  /// Width first, then lexicographic on the string form.
  friend std::strong_ordering operator<=>(const GpnWord& a, const GpnWord& b);

 private:
  std::vector<std::uint8_t> digits_;
};

/// Widest word accepted by representations() and friends.
inline constexpr unsigned kMaxRepresentationWidth = 64;

std::vector<BigInt> weights(const WeightSystem& ws, unsigned m);

/// Sum of a_k R_k.
GpnValue evaluate(const GpnWord& word, const WeightSystem& ws);

/// Sum of R_1..R_width, the value of the all-ones word.
GpnValue max_value(const WeightSystem& ws, unsigned width);

/// Every width-bit word that evaluates to `value`, in ascending string
/// order. Empty when `value` has no representation at this width.
std::vector<GpnWord> representations(const GpnValue& value, unsigned width, const WeightSystem& ws);

/// |representations(value, width, ws)| without materializing the words.
BigInt count_representations(const GpnValue& value, unsigned width, const WeightSystem& ws);

/// Greedy highest-weight-first encoding. If the greedy pass leaves a
/// remainder, returns the largest member of representations() instead.
/// Throws not-representable when no width-bit word has this value.
GpnWord canonical_encode(const GpnValue& value, unsigned width, const WeightSystem& ws);

/// C(n, k) for n <= 64; zero when k > n.
std::uint64_t binomial(unsigned n, unsigned k);

/// Combinadic rank: with one-positions p_1 < ... < p_K counted from a_1 as
/// position 0, returns sum C(p_i, i). This is the lexicographic rank of the
/// word among all words of its width and popcount. Width must be <= 64.
std::uint64_t combo_rank(const GpnWord& word);

/// Inverse of combo_rank. Throws out-of-range when rank >= C(n, k).
GpnWord combo_unrank(unsigned n, unsigned k, std::uint64_t rank);

}  // namespace gpn
