#include "gpn/bitio.hpp"

#include <bit>

#include "gpn/error.hpp"

namespace gpn {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::unsupported: return "unsupported";
    case Errc::not_representable: return "not-representable";
    case Errc::out_of_range: return "out-of-range";
    case Errc::infeasible_multiplicities: return "infeasible-multiplicities";
    case Errc::class_overflow: return "class-overflow";
    case Errc::malformed_flag: return "malformed-flag";
    case Errc::alignment_error: return "alignment-error";
    case Errc::corrupt_stream: return "corrupt-stream";
    case Errc::unknown_codeword: return "unknown-codeword";
    case Errc::invalid_chunk: return "invalid-chunk";
    case Errc::bad_magic: return "bad-magic";
    case Errc::bad_version: return "bad-version";
    case Errc::truncated_section: return "truncated-section";
    case Errc::length_overflow: return "length-overflow";
    case Errc::checksum_mismatch: return "checksum-mismatch";
  }
  return "unknown-error";
}

BitString BitString::from_string(std::string_view bits) {
  BitString out;
  out.bytes_.reserve((bits.size() + 7) / 8);
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw Error(Errc::invalid_argument, "bit string may only contain '0' and '1'");
    out.push_back(c == '1');
  }
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes) {
  BitString out;
  out.bytes_.assign(bytes.begin(), bytes.end());
  out.size_ = bytes.size() * 8;
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_length) {
  if (bit_length > bytes.size() * 8 || (bit_length + 7) / 8 != bytes.size())
    throw Error(Errc::length_overflow, "bit length does not match byte count");
  BitString out;
  out.bytes_.assign(bytes.begin(), bytes.end());
  out.size_ = bit_length;
  if (bit_length % 8 != 0) {
    const std::uint8_t tail_mask = static_cast<std::uint8_t>(0xFFU >> (bit_length % 8));
    if (out.bytes_.back() & tail_mask)
      throw Error(Errc::corrupt_stream, "nonzero padding bits after declared length");
  }
  return out;
}

void BitString::set(std::size_t i, bool bit) noexcept {
  const auto mask = static_cast<std::uint8_t>(0x80U >> (i & 7));
  if (bit)
    bytes_[i >> 3] |= mask;
  else
    bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
}

void BitString::push_back(bool bit) {
  if ((size_ & 7) == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (size_ & 7));
  ++size_;
}

void BitString::append_bits(std::uint64_t value, unsigned count) {
  while (count > 0) {
    const unsigned used = size_ & 7;
    if (used == 0) bytes_.push_back(0);
    const unsigned room = 8 - used;
    const unsigned take = count < room ? count : room;
    const auto chunk = static_cast<std::uint8_t>((value >> (count - take)) & ((1U << take) - 1));
    bytes_.back() |= static_cast<std::uint8_t>(chunk << (room - take));
    size_ += take;
    count -= take;
  }
}

void BitString::append(const BitString& other) {
  if ((size_ & 7) == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    size_ += other.size_;
    return;
  }
  std::size_t pos = 0;
  for (; pos + 64 <= other.size_; pos += 64) append_bits(other.read_bits(pos, 64), 64);
  const auto rest = static_cast<unsigned>(other.size_ - pos);
  if (rest) append_bits(other.read_bits(pos, rest), rest);
}

std::uint64_t BitString::read_bits(std::size_t pos, unsigned count) const noexcept {
  std::uint64_t value = 0;
  while (count > 0) {
    const unsigned offset = pos & 7;
    const unsigned room = 8 - offset;
    const unsigned take = count < room ? count : room;
    const unsigned byte = bytes_[pos >> 3];
    const unsigned chunk = (byte >> (room - take)) & ((1U << take) - 1);
    value = (take == 64 ? 0 : value << take) | chunk;
    pos += take;
    count -= take;
  }
  return value;
}

void BitString::resize(std::size_t bit_length) {
  const std::size_t old = size_;
  bytes_.resize((bit_length + 7) / 8, 0);
  size_ = bit_length;
  if (bit_length < old && bit_length % 8 != 0)
    bytes_.back() &= static_cast<std::uint8_t>(0xFFU << (8 - bit_length % 8));
}

BitString BitString::slice(std::size_t pos, std::size_t count) const {
  BitString out;
  out.bytes_.reserve((count + 7) / 8);
  std::size_t i = 0;
  for (; i + 64 <= count; i += 64) out.append_bits(read_bits(pos + i, 64), 64);
  const auto rest = static_cast<unsigned>(count - i);
  if (rest) out.append_bits(read_bits(pos + i, rest), rest);
  return out;
}

std::size_t BitString::count_ones() const noexcept {
  std::size_t n = 0;
  for (auto b : bytes_) n += static_cast<std::size_t>(std::popcount(b));
  return n;
}

std::string BitString::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if ((*this)[i]) s[i] = '1';
  return s;
}

bool BitReader::read() {
  if (pos_ >= bits_->size()) throw Error(Errc::corrupt_stream, "read past end of bit stream");
  return (*bits_)[pos_++];
}

std::uint64_t BitReader::read_bits(unsigned count) {
  if (count > remaining()) throw Error(Errc::corrupt_stream, "read past end of bit stream");
  const auto v = count ? bits_->read_bits(pos_, count) : 0;
  pos_ += count;
  return v;
}

}  // namespace gpn
