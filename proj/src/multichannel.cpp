#include "gpn/multichannel.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "gpn/error.hpp"
#include "gpn/numeration.hpp"
#include "gpn/splitmix.hpp"

namespace gpn {

std::string_view algorithm_name(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::mv2: return "mv2";
    case Algorithm::clone: return "clone";
    case Algorithm::binomial: return "binomial";
    case Algorithm::fma: return "fma";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (auto a : {Algorithm::mv2, Algorithm::clone, Algorithm::binomial, Algorithm::fma})
    if (algorithm_name(a) == name) return a;
  return std::nullopt;
}

Codebook::Codebook(Algorithm algo, unsigned width, std::uint64_t seed)
    : algo_(algo),
      width_(width),
      seed_(seed),
      entries_(std::size_t{1} << width),
      class_length_(width + 1, 0),
      multiplicities_(width + 1, 0),
      decode_(width + 1) {}

void Codebook::assign(std::span<const std::uint32_t> symbols, std::span<const CodeEntry> codes) {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const CodeEntry& c = codes[i];
    entries_[symbols[i]] = c;
    ++multiplicities_[c.cls];
    class_length_[c.cls] = c.length;
    auto& table = decode_[c.cls];
    if (table.empty()) table.assign(std::size_t{1} << c.length, -1);
    table[c.code] = static_cast<std::int32_t>(symbols[i]);
  }
}

std::uint32_t Codebook::lookup(unsigned cls, std::uint32_t code) const {
  if (cls >= decode_.size() || decode_[cls].empty())
    throw Error(Errc::unknown_codeword, "class " + std::to_string(cls) + " has no codes");
  const auto& table = decode_[cls];
  if (code >= table.size() || table[code] < 0)
    throw Error(Errc::unknown_codeword,
                "code " + std::to_string(code) + " is not assigned in class " + std::to_string(cls));
  return static_cast<std::uint32_t>(table[code]);
}

namespace {

std::vector<std::uint32_t> symbol_order(unsigned n, std::uint64_t seed) {
  std::vector<std::uint32_t> symbols(std::size_t{1} << n);
  std::iota(symbols.begin(), symbols.end(), 0U);
  if (seed != 0) keyed_shuffle(std::span(symbols), seed);
  return symbols;
}

unsigned ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : static_cast<unsigned>(std::bit_width(x - 1)); }

}  // namespace

Codebook build_mv2_codebook(unsigned n, std::uint64_t seed) {
  if (n < 2 || n > kMaxSymbolWidth)
    throw Error(Errc::invalid_argument, "MV2 needs 2 <= N <= 16, got " + std::to_string(n));
  Codebook cb(Algorithm::mv2, n, seed);
  if (n == 2 && seed == 0) {
    const std::uint32_t symbols[] = {0b00, 0b01, 0b10, 0b11};
    const CodeEntry codes[] = {{1, 0b0, 1}, {2, 0b00, 2}, {2, 0b11, 2}, {1, 0b1, 1}};
    cb.assign(symbols, codes);
    return cb;
  }
  std::vector<CodeEntry> codes;
  codes.reserve(std::size_t{1} << n);
  for (unsigned k = 1; k < n; ++k)
    for (std::uint32_t c = 0; c < (1U << k); ++c) codes.push_back({k, c, k});
  codes.push_back({n, 0, n});
  codes.push_back({n, (1U << n) - 1, n});
  cb.assign(symbol_order(n, seed), codes);
  return cb;
}

Codebook build_clone_codebook(unsigned n, std::span<const std::uint64_t> multiplicities,
                              std::uint64_t seed) {
  if (n < 1 || n > kMaxSymbolWidth)
    throw Error(Errc::invalid_argument, "clone needs 1 <= N <= 16, got " + std::to_string(n));
  if (multiplicities.size() != n)
    throw Error(Errc::invalid_argument, "clone needs exactly N multiplicities");
  std::uint64_t total = 0;
  for (unsigned k = 1; k <= n; ++k) {
    if (multiplicities[k - 1] > (std::uint64_t{1} << k))
      throw Error(Errc::class_overflow, "M_" + std::to_string(k) + " = " +
                                            std::to_string(multiplicities[k - 1]) + " exceeds 2^" +
                                            std::to_string(k));
    total += multiplicities[k - 1];
  }
  if (total != (std::uint64_t{1} << n))
    throw Error(Errc::infeasible_multiplicities,
                "multiplicities sum to " + std::to_string(total) + ", need " +
                    std::to_string(std::uint64_t{1} << n));
  Codebook cb(Algorithm::clone, n, seed);
  std::vector<CodeEntry> codes;
  codes.reserve(total);
  for (unsigned k = 1; k <= n; ++k)
    for (std::uint32_t c = 0; c < multiplicities[k - 1]; ++c) codes.push_back({k, c, k});
  cb.assign(symbol_order(n, seed), codes);
  return cb;
}

Codebook build_binomial_codebook(unsigned n) {
  if (n < 1 || n > kMaxSymbolWidth)
    throw Error(Errc::invalid_argument, "binomial needs 1 <= N <= 16, got " + std::to_string(n));
  Codebook cb(Algorithm::binomial, n, 0);
  std::vector<std::uint32_t> symbols(std::size_t{1} << n);
  std::vector<CodeEntry> codes(symbols.size());
  for (std::uint32_t s = 0; s < symbols.size(); ++s) {
    const auto word = GpnWord::from_mask(s, n);
    const unsigned k = word.popcount();
    symbols[s] = s;
    codes[s] = {k, static_cast<std::uint32_t>(combo_rank(word)), ceil_log2(binomial(n, k))};
  }
  cb.assign(symbols, codes);
  return cb;
}

BitString flag_encode(std::span<const unsigned> classes, unsigned n) {
  BitWriter w;
  for (unsigned k : classes) {
    if (k > n) throw Error(Errc::invalid_argument, "flag class " + std::to_string(k) + " > N");
    w.write_bits(std::uint64_t{1} << (n - k), n - k + 1);
  }
  return w.take();
}

std::vector<unsigned> flag_decode(const BitString& flags, unsigned n) {
  std::vector<unsigned> classes;
  if (flags.empty()) return classes;
  if (!flags[0]) throw Error(Errc::malformed_flag, "flag stream must start with '1'");
  unsigned zeros = 0;
  for (std::size_t i = 1; i <= flags.size(); ++i) {
    if (i == flags.size() || flags[i]) {
      classes.push_back(n - zeros);
      zeros = 0;
    } else if (++zeros > n) {
      throw Error(Errc::malformed_flag, "flag codeword longer than N + 1 bits");
    }
  }
  return classes;
}

RoundOutput encode_round(const BitString& input, const Codebook& cb) {
  const unsigned n = cb.symbol_width();
  if (input.size() % n != 0)
    throw Error(Errc::alignment_error, "input length " + std::to_string(input.size()) +
                                           " is not a multiple of N = " + std::to_string(n));
  BitWriter core;
  BitWriter flags;
  for (std::size_t pos = 0; pos < input.size(); pos += n) {
    const auto& e = cb.entry(static_cast<std::uint32_t>(input.read_bits(pos, n)));
    core.write_bits(e.code, e.length);
    flags.write_bits(std::uint64_t{1} << (n - e.cls), n - e.cls + 1);
  }
  return {core.take(), flags.take(), input.size()};
}

BitString decode_round(const BitString& core, const BitString& flags, const Codebook& cb) {
  const unsigned n = cb.symbol_width();
  const auto classes = flag_decode(flags, n);
  std::uint64_t need = 0;
  for (unsigned k : classes) {
    if (cb.multiplicities()[k] == 0)
      throw Error(Errc::unknown_codeword, "flag announces empty class " + std::to_string(k));
    need += cb.code_length(k);
  }
  if (need != core.size())
    throw Error(Errc::corrupt_stream, "flags describe " + std::to_string(need) + " core bits, core has " +
                                          std::to_string(core.size()));
  BitReader reader(core);
  BitWriter out;
  for (unsigned k : classes) {
    const auto code = static_cast<std::uint32_t>(reader.read_bits(cb.code_length(k)));
    out.write_bits(cb.lookup(k, code), n);
  }
  return out.take();
}

std::uint64_t MultiRoundOutput::core_length(unsigned round) const {
  if (round < 1 || round > rounds_executed)
    throw Error(Errc::invalid_argument, "round index out of range");
  return round == rounds_executed ? core.size() : input_lengths[round];
}

MultiRoundOutput transform(const BitString& input, const Codebook& cb, unsigned rounds) {
  if (rounds < 1) throw Error(Errc::invalid_argument, "at least one round is required");
  const unsigned n = cb.symbol_width();
  MultiRoundOutput out;
  BitString current = input;
  for (unsigned r = 0; r < rounds; ++r) {
    out.input_lengths.push_back(current.size());
    current.resize((current.size() + n - 1) / n * n);
    auto round = encode_round(current, cb);
    out.flags.push_back(std::move(round.flags));
    current = std::move(round.core);
    ++out.rounds_executed;
    if (current.empty()) break;
  }
  out.core = std::move(current);
  return out;
}

BitString inverse_transform(const MultiRoundOutput& out, const Codebook& cb) {
  if (out.rounds_executed < 1 || out.flags.size() != out.rounds_executed ||
      out.input_lengths.size() != out.rounds_executed)
    throw Error(Errc::corrupt_stream, "round metadata is inconsistent");
  const unsigned n = cb.symbol_width();
  BitString current = out.core;
  for (unsigned r = out.rounds_executed; r-- > 0;) {
    BitString decoded = decode_round(current, out.flags[r], cb);
    const std::uint64_t true_len = out.input_lengths[r];
    if (true_len > decoded.size() || decoded.size() - true_len >= n)
      throw Error(Errc::corrupt_stream, "round " + std::to_string(r + 1) + " length " +
                                            std::to_string(true_len) + " does not match decoded " +
                                            std::to_string(decoded.size()) + " bits");
    for (std::size_t i = true_len; i < decoded.size(); ++i)
      if (decoded[i]) throw Error(Errc::corrupt_stream, "nonzero padding in round " + std::to_string(r + 1));
    decoded.resize(true_len);
    current = std::move(decoded);
  }
  return current;
}

double ChannelCounts::zero_frequency() const noexcept {
  return bits ? static_cast<double>(zeros) / static_cast<double>(bits) : 0.0;
}

double ChannelCounts::entropy() const noexcept {
  if (bits == 0) return 0.0;
  double h = 0.0;
  for (auto c : {zeros, ones}) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(bits);
    h -= p * std::log2(p);
  }
  return h;
}

ChannelStats channel_stats(const MultiRoundOutput& out, std::uint64_t input_bit_length) {
  ChannelStats s;
  s.input_bits = input_bit_length;
  if (out.rounds_executed >= 1) s.first_core_bits = out.core_length(1);
  const auto count = [](ChannelCounts& c, const BitString& bits) {
    const auto ones = bits.count_ones();
    c.bits += bits.size();
    c.ones += ones;
    c.zeros += bits.size() - ones;
  };
  count(s.core, out.core);
  for (const auto& f : out.flags) count(s.flags, f);
  return s;
}

}  // namespace gpn
