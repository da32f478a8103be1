#include "gpn/container.hpp"

#include <algorithm>
#include <string>

#include <boost/crc.hpp>

#include "gpn/error.hpp"

namespace gpn {

namespace {

bool is_mv2_family(Algorithm a) { return a != Algorithm::fma; }

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

class ByteSink {
 public:
  void u8(unsigned v) { out_.push_back(static_cast<std::uint8_t>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8((v >> (8 * i)) & 0xFFU);
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8((v >> (8 * i)) & 0xFFU);
  }
  void section(const BitString& bits) {
    u64(bits.size());
    out_.insert(out_.end(), bits.bytes().begin(), bits.bytes().end());
  }
  std::vector<std::uint8_t>& bytes() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteSource {
 public:
  explicit ByteSource(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8(const char* what) { return need(1, what)[0]; }
  std::uint32_t u32(const char* what) {
    auto b = need(4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }
  std::uint64_t u64(const char* what) {
    auto b = need(8, what);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }
  BitString section(const char* what) {
    const std::uint64_t bits = u64(what);
    if (bits / 8 > bytes_.size())
      throw Error(Errc::length_overflow, std::string(what) + " declares " + std::to_string(bits) +
                                             " bits, more than the whole container");
    const std::size_t nbytes = static_cast<std::size_t>((bits + 7) / 8);
    return BitString::from_bytes(need(nbytes, what), static_cast<std::size_t>(bits));
  }

  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> need(std::size_t count, const char* what) {
    if (count > remaining())
      throw Error(Errc::truncated_section, std::string(what) + " runs past the end of the container");
    auto s = bytes_.subspan(pos_, count);
    pos_ += count;
    return s;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void check_width(Algorithm a, unsigned n) {
  const unsigned lo = a == Algorithm::mv2 ? 2 : 1;
  if (n < lo || n > kMaxSymbolWidth)
    throw Error(Errc::invalid_argument, "N = " + std::to_string(n) + " is out of range for " +
                                            std::string(algorithm_name(a)));
}

}  // namespace

std::vector<std::uint8_t> write_container(const Container& c) {
  check_width(c.algorithm, c.n);
  ByteSink out;
  for (auto b : kContainerMagic) out.u8(b);
  out.u8(kContainerVersion);
  out.u8(static_cast<unsigned>(c.algorithm));
  out.u8(c.n);
  out.u64(c.seed);
  if (is_mv2_family(c.algorithm)) {
    if (c.round_lengths.empty() || c.round_lengths.size() > 255)
      throw Error(Errc::invalid_argument, "round count must be in 1..255");
    if (c.flags.size() != c.round_lengths.size())
      throw Error(Errc::invalid_argument, "one flag stream per round is required");
    out.u8(static_cast<unsigned>(c.round_lengths.size()));
    for (auto len : c.round_lengths) out.u64(len);
    if (c.algorithm == Algorithm::clone) {
      if (c.multiplicities.size() != c.n)
        throw Error(Errc::invalid_argument, "clone containers carry exactly N multiplicities");
      out.u8(c.n);
      for (auto mk : c.multiplicities) out.u64(mk);
    }
    for (const auto& f : c.flags) out.section(f);
  } else {
    if (c.m < 1 || c.m > 255) throw Error(Errc::invalid_argument, "M must fit in one byte");
    out.u8(c.m);
    out.u8(static_cast<unsigned>(c.policy));
    out.u64(c.original_bit_length);
  }
  out.section(c.core);
  out.u32(crc32(out.bytes()));
  return std::move(out.bytes());
}

Container read_container(std::span<const std::uint8_t> bytes) {
  const std::size_t head = std::min(bytes.size(), kContainerMagic.size());
  if (!std::equal(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(head), kContainerMagic.begin()))
    throw Error(Errc::bad_magic, "not a GPNC container");
  ByteSource in(bytes);
  for (std::size_t i = 0; i < kContainerMagic.size(); ++i) in.u8("magic");
  if (const auto v = in.u8("version"); v != kContainerVersion)
    throw Error(Errc::bad_version, "unsupported container version " + std::to_string(v));

  Container c;
  const auto algo = in.u8("algorithm id");
  if (algo > static_cast<unsigned>(Algorithm::fma))
    throw Error(Errc::invalid_argument, "unknown algorithm id " + std::to_string(algo));
  c.algorithm = static_cast<Algorithm>(algo);
  c.n = in.u8("symbol width");
  check_width(c.algorithm, c.n);
  c.seed = in.u64("seed");

  if (is_mv2_family(c.algorithm)) {
    const unsigned rounds = in.u8("round count");
    if (rounds < 1) throw Error(Errc::invalid_argument, "container declares zero rounds");
    for (unsigned r = 0; r < rounds; ++r) c.round_lengths.push_back(in.u64("round length"));
    if (c.algorithm == Algorithm::clone) {
      const unsigned count = in.u8("multiplicity count");
      if (count != c.n) throw Error(Errc::corrupt_stream, "multiplicity count differs from N");
      for (unsigned k = 0; k < count; ++k) c.multiplicities.push_back(in.u64("multiplicity"));
    }
    for (unsigned r = 0; r < rounds; ++r) c.flags.push_back(in.section("flag section"));
  } else {
    c.m = in.u8("target width");
    const auto policy = in.u8("policy");
    if (policy > static_cast<unsigned>(FmaPolicy::keyed))
      throw Error(Errc::invalid_argument, "unknown FMA policy " + std::to_string(policy));
    c.policy = static_cast<FmaPolicy>(policy);
    c.original_bit_length = in.u64("original length");
  }
  c.core = in.section("core section");

  const std::size_t body = in.offset();
  const std::uint32_t stored = in.u32("checksum");
  if (in.remaining() != 0)
    throw Error(Errc::corrupt_stream, std::to_string(in.remaining()) + " trailing bytes after checksum");
  if (stored != crc32(bytes.first(body)))
    throw Error(Errc::checksum_mismatch, "container checksum does not match its contents");
  return c;
}

std::vector<std::uint8_t> write_flag_file(std::span<const BitString> flags) {
  if (flags.empty() || flags.size() > 255)
    throw Error(Errc::invalid_argument, "round count must be in 1..255");
  ByteSink out;
  for (auto b : kFlagFileMagic) out.u8(b);
  out.u8(kContainerVersion);
  out.u8(static_cast<unsigned>(flags.size()));
  for (const auto& f : flags) out.section(f);
  out.u32(crc32(out.bytes()));
  return std::move(out.bytes());
}

std::vector<BitString> read_flag_file(std::span<const std::uint8_t> bytes) {
  const std::size_t head = std::min(bytes.size(), kFlagFileMagic.size());
  if (!std::equal(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(head), kFlagFileMagic.begin()))
    throw Error(Errc::bad_magic, "not a GPNF flag file");
  ByteSource in(bytes);
  for (std::size_t i = 0; i < kFlagFileMagic.size(); ++i) in.u8("magic");
  if (const auto v = in.u8("version"); v != kContainerVersion)
    throw Error(Errc::bad_version, "unsupported flag file version " + std::to_string(v));
  const unsigned rounds = in.u8("round count");
  if (rounds < 1) throw Error(Errc::invalid_argument, "flag file declares zero rounds");
  std::vector<BitString> flags;
  for (unsigned r = 0; r < rounds; ++r) flags.push_back(in.section("flag section"));
  const std::size_t body = in.offset();
  const std::uint32_t stored = in.u32("checksum");
  if (in.remaining() != 0)
    throw Error(Errc::corrupt_stream, std::to_string(in.remaining()) + " trailing bytes after checksum");
  if (stored != crc32(bytes.first(body)))
    throw Error(Errc::checksum_mismatch, "flag file checksum does not match its contents");
  return flags;
}

Container make_container(const Codebook& cb, const MultiRoundOutput& out) {
  Container c;
  c.algorithm = cb.algorithm();
  c.n = cb.symbol_width();
  c.seed = cb.seed();
  c.round_lengths = out.input_lengths;
  if (cb.algorithm() == Algorithm::clone) {
    const auto mk = cb.multiplicities();
    c.multiplicities.assign(mk.begin() + 1, mk.end());
  }
  c.flags = out.flags;
  c.core = out.core;
  return c;
}

Container make_container(const FmaConfig& cfg, const FmaStream& stream) {
  if (cfg.weights.kind() != WeightSystem::Kind::fibonacci)
    throw Error(Errc::unsupported, "containers store FMA streams over Fibonacci weights only");
  Container c;
  c.algorithm = Algorithm::fma;
  c.n = cfg.chunk_width;
  c.seed = cfg.seed;
  c.m = cfg.target_width;
  c.policy = cfg.policy;
  c.original_bit_length = stream.original_bit_length;
  c.core = stream.payload;
  return c;
}

Codebook codebook_of(const Container& c) {
  switch (c.algorithm) {
    case Algorithm::mv2: return build_mv2_codebook(c.n, c.seed);
    case Algorithm::clone: return build_clone_codebook(c.n, c.multiplicities, c.seed);
    case Algorithm::binomial: return build_binomial_codebook(c.n);
    case Algorithm::fma: break;
  }
  throw Error(Errc::invalid_argument, "FMA containers have no codebook");
}

MultiRoundOutput rounds_of(const Container& c) {
  MultiRoundOutput out;
  out.rounds_executed = static_cast<unsigned>(c.round_lengths.size());
  out.flags = c.flags;
  out.core = c.core;
  out.input_lengths = c.round_lengths;
  return out;
}

FmaConfig fma_config_of(const Container& c) {
  FmaConfig cfg;
  cfg.chunk_width = c.n;
  cfg.target_width = c.m;
  cfg.policy = c.policy;
  cfg.seed = c.seed;
  return cfg;
}

FmaStream fma_stream_of(const Container& c) {
  if (c.m == 0) throw Error(Errc::invalid_argument, "FMA container without target width");
  return {c.core.size() / c.m, c.core, c.original_bit_length};
}

BitString decode_container(const Container& c) {
  if (c.algorithm == Algorithm::fma) {
    const auto cfg = fma_config_of(c);
    return fma_decode(fma_stream_of(c), cfg);
  }
  return inverse_transform(rounds_of(c), codebook_of(c));
}

}  // namespace gpn
