#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gpn/bitio.hpp"
#include "gpn/numeration.hpp"

namespace gpn {

enum class FmaPolicy : std::uint8_t { canonical = 0, keyed = 1 };

std::string_view policy_name(FmaPolicy policy) noexcept;
std::optional<FmaPolicy> parse_policy(std::string_view name) noexcept;

struct FmaConfig {
  unsigned chunk_width = 0;   // N
  unsigned target_width = 0;  // M
  WeightSystem weights = WeightSystem::fibonacci();
  FmaPolicy policy = FmaPolicy::canonical;
  std::uint64_t seed = 0;  // keyed policy only
};

// Smallest M with max_value(ws, M) >= 2^N - 1.
unsigned min_width(unsigned n, const WeightSystem& ws);

// Config with M = min_width(N, ws).
FmaConfig make_fma_config(unsigned n, FmaPolicy policy = FmaPolicy::canonical, std::uint64_t seed = 0,
                          const WeightSystem& ws = WeightSystem::fibonacci());

// Precomputed chunk coder for one configuration.
//
// Representation counts are tabulated for every (low-digit count, value)
// pair below 2^N, so picking the i-th representation of a value costs M
// table reads. Construction fails with not-representable when some chunk
// value has no word at all (weight systems with gaps). Weights above 2^N - 1 can never be set in a representation
// of a chunk, so they are clamped to 2^N internally.
class FmaCodec {
 public:
  explicit FmaCodec(FmaConfig cfg);

  const FmaConfig& config() const noexcept { return cfg_; }

  // Number of M-digit words evaluating to `value`.
  std::uint64_t count(std::uint32_t value) const;
  // `index`-th such word in ascending string order, as a mask (bit k-1 = a_k).
  std::uint64_t select(std::uint32_t value, std::uint64_t index) const;

  std::uint64_t encode_mask(std::uint32_t value, std::uint64_t chunk_index) const;
  std::uint32_t decode_mask(std::uint64_t mask) const;

  GpnWord encode_chunk(std::uint32_t value, std::uint64_t chunk_index = 0) const;
  std::uint32_t decode_chunk(const GpnWord& word) const;

 private:
  FmaConfig cfg_;
  std::uint64_t limit_;                // 2^N
  std::vector<std::uint64_t> weight_;  // clamped, weight_[k - 1] = R_k
  std::vector<std::uint64_t> counts_;  // counts_[k * limit_ + r]
};

// Representation index used by the keyed policy for chunk `chunk_index`.
std::uint64_t keyed_chunk_word(std::uint64_t seed, std::uint64_t chunk_index) noexcept;

GpnWord fma_encode_chunk(std::uint64_t value, const FmaConfig& cfg, std::uint64_t chunk_index = 0);
std::uint64_t fma_decode_chunk(const GpnWord& word, const FmaConfig& cfg);

struct FmaStream {
  std::uint64_t chunks_encoded = 0;
  BitString payload;  // chunks_encoded * M bits
  std::uint64_t original_bit_length = 0;
};

// `threads` > 1 splits the chunks into contiguous ranges; the payload is
// identical to the single-threaded one.
FmaStream fma_encode(const BitString& input, const FmaConfig& cfg, unsigned threads = 1);
BitString fma_decode(const FmaStream& stream, const FmaConfig& cfg);

BigInt representation_count(const GpnValue& value, unsigned width, const WeightSystem& ws);

}  // namespace gpn
