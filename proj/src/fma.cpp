#include "gpn/fma.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "gpn/error.hpp"
#include "gpn/splitmix.hpp"

namespace gpn {

namespace {
constexpr unsigned kMinWidthSearchLimit = 1024;
}  // namespace

std::string_view policy_name(FmaPolicy policy) noexcept {
  return policy == FmaPolicy::keyed ? "keyed" : "canonical";
}

std::optional<FmaPolicy> parse_policy(std::string_view name) noexcept {
  if (name == "canonical") return FmaPolicy::canonical;
  if (name == "keyed") return FmaPolicy::keyed;
  return std::nullopt;
}

unsigned min_width(unsigned n, const WeightSystem& ws) {
  if (n < 1 || n > 64) throw Error(Errc::invalid_argument, "chunk width must be in 1..64");
  const BigInt target = (BigInt(1) << n) - 1;
  BigInt sum = 0;
  const unsigned cap = std::min(ws.max_width(), kMinWidthSearchLimit);
  for (unsigned m = 1; m <= cap; ++m) {
    sum += ws.weights(m).back();
    if (sum >= target) return m;
  }
  throw Error(Errc::not_representable, ws.name() + " cannot cover " + std::to_string(n) + "-bit chunks");
}

FmaConfig make_fma_config(unsigned n, FmaPolicy policy, std::uint64_t seed, const WeightSystem& ws) {
  return FmaConfig{n, min_width(n, ws), ws, policy, seed};
}

FmaCodec::FmaCodec(FmaConfig cfg) : cfg_(std::move(cfg)) {
  const unsigned n = cfg_.chunk_width;
  const unsigned m = cfg_.target_width;
  if (n < 1 || n > 16) throw Error(Errc::invalid_argument, "FMA chunk width must be in 1..16");
  if (m < 1 || m > kMaxRepresentationWidth)
    throw Error(Errc::invalid_argument, "FMA target width must be in 1..64");
  if (m > cfg_.weights.max_width())
    throw Error(Errc::invalid_argument, "target width exceeds the weight system");
  limit_ = std::uint64_t{1} << n;

  const auto full = cfg_.weights.weights(m);
  BigInt total = 0;
  for (const auto& r : full) total += r;
  if (total < limit_ - 1)
    throw Error(Errc::invalid_argument, "M = " + std::to_string(m) + " cannot represent every " +
                                            std::to_string(n) + "-bit chunk");
  weight_.reserve(m);
  for (const auto& r : full) weight_.push_back(r >= limit_ ? limit_ : r.convert_to<std::uint64_t>());

  counts_.assign((m + 1) * limit_, 0);
  counts_[0] = 1;
  for (unsigned k = 1; k <= m; ++k) {
    const std::uint64_t w = weight_[k - 1];
    const auto* prev = &counts_[(k - 1) * limit_];
    auto* cur = &counts_[k * limit_];
    for (std::uint64_t r = 0; r < limit_; ++r) cur[r] = prev[r] + (w <= r ? prev[r - w] : 0);
  }
  const auto* last = &counts_[m * limit_];
  for (std::uint64_t r = 0; r < limit_; ++r)
    if (last[r] == 0)
      throw Error(Errc::not_representable, "chunk value " + std::to_string(r) + " has no " + std::to_string(m) +
                                               "-digit " + cfg_.weights.name() + " word");
}

std::uint64_t FmaCodec::count(std::uint32_t value) const {
  if (value >= limit_) throw Error(Errc::invalid_argument, "chunk value exceeds 2^N - 1");
  return counts_[cfg_.target_width * limit_ + value];
}

std::uint64_t FmaCodec::select(std::uint32_t value, std::uint64_t index) const {
  if (index >= count(value)) throw Error(Errc::out_of_range, "representation index out of range");
  std::uint64_t mask = 0;
  std::uint64_t rem = value;
  for (unsigned k = cfg_.target_width; k >= 1; --k) {
    const std::uint64_t with_zero = counts_[(k - 1) * limit_ + rem];
    if (index < with_zero) continue;
    index -= with_zero;
    mask |= std::uint64_t{1} << (k - 1);
    rem -= weight_[k - 1];
  }
  return mask;
}

std::uint64_t keyed_chunk_word(std::uint64_t seed, std::uint64_t chunk_index) noexcept {
  return SplitMix64(seed ^ splitmix64_once(chunk_index)).next();
}

std::uint64_t FmaCodec::encode_mask(std::uint32_t value, std::uint64_t chunk_index) const {
  const std::uint64_t n = count(value);
  if (n == 0)
    throw Error(Errc::not_representable, "value " + std::to_string(value) + " has no " +
                                             std::to_string(cfg_.target_width) + "-digit word");
  // Ascending order, so the canonical (greedy) word is the last one.
  const std::uint64_t index =
      cfg_.policy == FmaPolicy::keyed ? keyed_chunk_word(cfg_.seed, chunk_index) % n : n - 1;
  return select(value, index);
}

std::uint32_t FmaCodec::decode_mask(std::uint64_t mask) const {
  std::uint64_t value = 0;
  for (unsigned k = 1; k <= cfg_.target_width; ++k)
    if ((mask >> (k - 1)) & 1U) value += weight_[k - 1];
  if (value >= limit_)
    throw Error(Errc::invalid_chunk, "word value exceeds the " + std::to_string(cfg_.chunk_width) +
                                         "-bit chunk range");
  return static_cast<std::uint32_t>(value);
}

GpnWord FmaCodec::encode_chunk(std::uint32_t value, std::uint64_t chunk_index) const {
  return GpnWord::from_mask(encode_mask(value, chunk_index), cfg_.target_width);
}

std::uint32_t FmaCodec::decode_chunk(const GpnWord& word) const {
  if (word.width() != cfg_.target_width)
    throw Error(Errc::alignment_error, "word width " + std::to_string(word.width()) + " != M");
  return decode_mask(word.to_mask());
}

GpnWord fma_encode_chunk(std::uint64_t value, const FmaConfig& cfg, std::uint64_t chunk_index) {
  if (cfg.chunk_width < 64 && value >> cfg.chunk_width)
    throw Error(Errc::invalid_argument, "chunk value exceeds 2^N - 1");
  return FmaCodec(cfg).encode_chunk(static_cast<std::uint32_t>(value), chunk_index);
}

std::uint64_t fma_decode_chunk(const GpnWord& word, const FmaConfig& cfg) {
  return FmaCodec(cfg).decode_chunk(word);
}

FmaStream fma_encode(const BitString& input, const FmaConfig& cfg, unsigned threads) {
  const FmaCodec codec(cfg);
  const unsigned n = cfg.chunk_width;
  const unsigned m = cfg.target_width;
  FmaStream out;
  out.original_bit_length = input.size();
  out.chunks_encoded = (input.size() + n - 1) / n;

  BitString padded = input;
  padded.resize(out.chunks_encoded * n);
  std::vector<std::uint64_t> masks(out.chunks_encoded);
  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      masks[i] = codec.encode_mask(static_cast<std::uint32_t>(padded.read_bits(i * n, n)), i);
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, masks.size() / 4096));
  if (workers <= 1) {
    work(0, masks.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t step = (masks.size() + workers - 1) / workers;
    for (std::size_t begin = 0; begin < masks.size(); begin += step)
      pool.emplace_back(work, begin, std::min(masks.size(), begin + step));
  }

  for (auto mask : masks) out.payload.append_bits(mask, m);
  return out;
}

BitString fma_decode(const FmaStream& stream, const FmaConfig& cfg) {
  const FmaCodec codec(cfg);
  const unsigned n = cfg.chunk_width;
  const unsigned m = cfg.target_width;
  if (stream.payload.size() % m != 0)
    throw Error(Errc::alignment_error, "payload length is not a multiple of M");
  if (stream.payload.size() / m != stream.chunks_encoded)
    throw Error(Errc::corrupt_stream, "payload length disagrees with chunk count");
  if (stream.original_bit_length > stream.chunks_encoded * n ||
      stream.chunks_encoded * n - stream.original_bit_length >= n)
    throw Error(Errc::corrupt_stream, "original length disagrees with chunk count");

  BitWriter out;
  for (std::uint64_t i = 0; i < stream.chunks_encoded; ++i)
    out.write_bits(codec.decode_mask(stream.payload.read_bits(i * m, m)), n);
  BitString bits = out.take();
  for (std::size_t i = stream.original_bit_length; i < bits.size(); ++i)
    if (bits[i]) throw Error(Errc::corrupt_stream, "nonzero padding in the last chunk");
  bits.resize(stream.original_bit_length);
  return bits;
}

BigInt representation_count(const GpnValue& value, unsigned width, const WeightSystem& ws) {
  return count_representations(value, width, ws);
}

}  // namespace gpn
