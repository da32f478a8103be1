#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gpn/bitio.hpp"

namespace gpn {

enum class Algorithm : std::uint8_t { mv2 = 0, clone = 1, binomial = 2, fma = 3 };

std::string_view algorithm_name(Algorithm algo) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

inline constexpr unsigned kMaxSymbolWidth = 16;

// Code assigned to one N-bit symbol. `cls` is the value announced on the
// flag channel; `length` is the number of core bits. For the MV2 family the
// two coincide; binomial classes carry a fixed-width rank instead.
struct CodeEntry {
  unsigned cls = 0;
  std::uint32_t code = 0;
  unsigned length = 0;
};

// Bijection between N-bit symbols and (class, code) pairs. Immutable once
// built, so one instance can be shared between threads.
class Codebook {
 public:
  Algorithm algorithm() const noexcept { return algo_; }
  unsigned symbol_width() const noexcept { return width_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t symbol_count() const noexcept { return entries_.size(); }

  const CodeEntry& entry(std::uint32_t symbol) const { return entries_.at(symbol); }

  // Lowest class that can appear on the flag channel (0 for binomial).
  unsigned min_class() const noexcept { return algo_ == Algorithm::binomial ? 0 : 1; }
  unsigned code_length(unsigned cls) const { return class_length_.at(cls); }
  // M_K for K = 0..N.
  std::span<const std::uint64_t> multiplicities() const noexcept { return multiplicities_; }

  // Symbol for (class, code); throws unknown-codeword.
  std::uint32_t lookup(unsigned cls, std::uint32_t code) const;

 private:
  friend Codebook build_mv2_codebook(unsigned, std::uint64_t);
  friend Codebook build_clone_codebook(unsigned, std::span<const std::uint64_t>, std::uint64_t);
  friend Codebook build_binomial_codebook(unsigned);

  Codebook(Algorithm algo, unsigned width, std::uint64_t seed);
  // Pairs `symbols` positionally with `codes` and builds the decode tables.
  void assign(std::span<const std::uint32_t> symbols, std::span<const CodeEntry> codes);

  Algorithm algo_;
  unsigned width_;
  std::uint64_t seed_;
  std::vector<CodeEntry> entries_;
  std::vector<unsigned> class_length_;
  std::vector<std::uint64_t> multiplicities_;
  std::vector<std::vector<std::int32_t>> decode_;  // [class][code] -> symbol or -1
};

// MV2: classes K = 1..N-1 hold all 2^K codes of length K, class N holds the
// two words 0^N and 1^N. Seed 0 pairs symbols in ascending order with codes
// in (class, code) order, except N = 2 which reproduces the classic table
// 00->0, 01->00, 10->11, 11->1. Any other seed shuffles the symbols first.
Codebook build_mv2_codebook(unsigned n, std::uint64_t seed);

// Clone: `multiplicities[K-1]` codes of length K for K = 1..N, taken as the
// lexicographically first K-bit words. Throws class-overflow when some
// M_K > 2^K and infeasible-multiplicities when the M_K do not sum to 2^N.
Codebook build_clone_codebook(unsigned n, std::span<const std::uint64_t> multiplicities,
                              std::uint64_t seed);

// Binomial: a symbol's class is its popcount K; its code is its combinadic
// rank in ceil(log2 C(N, K)) bits (nothing at all for K = 0 and K = N).
Codebook build_binomial_codebook(unsigned n);

// Flag channel: class K is written as '1' followed by N - K zeros.
BitString flag_encode(std::span<const unsigned> classes, unsigned n);
std::vector<unsigned> flag_decode(const BitString& flags, unsigned n);

struct RoundOutput {
  BitString core;
  BitString flags;
  std::size_t input_bit_length = 0;
};

struct MultiRoundOutput {
  unsigned rounds_executed = 0;
  std::vector<BitString> flags;             // one per round, in order
  BitString core;                           // output of the last round
  std::vector<std::uint64_t> input_lengths; // unpadded input length of each round

  // Core length after round `round` (1-based).
  std::uint64_t core_length(unsigned round) const;
};

// Input length must be a multiple of N (alignment-error otherwise).
RoundOutput encode_round(const BitString& input, const Codebook& cb);
BitString decode_round(const BitString& core, const BitString& flags, const Codebook& cb);

// Round i encodes the previous core, zero-padded on the right to a multiple
// of N. Stops early once a core comes out empty.
MultiRoundOutput transform(const BitString& input, const Codebook& cb, unsigned rounds);
BitString inverse_transform(const MultiRoundOutput& out, const Codebook& cb);

struct ChannelCounts {
  std::uint64_t bits = 0;
  std::uint64_t zeros = 0;
  std::uint64_t ones = 0;

  double zero_frequency() const noexcept;
  // Shannon entropy of the empirical bit distribution, in bits per bit.
  double entropy() const noexcept;
};

struct ChannelStats {
  std::uint64_t input_bits = 0;
  std::uint64_t first_core_bits = 0;
  ChannelCounts core;   // final core
  ChannelCounts flags;  // all flag streams together
};

ChannelStats channel_stats(const MultiRoundOutput& out, std::uint64_t input_bit_length);

}  // namespace gpn
