#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gpn {

// Packed bit sequence. Bits are stored MSB-first within each byte and the
// unused tail of the last byte is always zero.
class BitString {
 public:
  BitString() = default;

  static BitString from_string(std::string_view bits);
  static BitString from_bytes(std::span<const std::uint8_t> bytes);
  // Takes the first `bit_length` bits of `bytes`; the rest must be zero.
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_length);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t i) const noexcept {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1U;
  }
  void set(std::size_t i, bool bit) noexcept;

  void push_back(bool bit);
  // Appends the low `count` bits of `value`, most significant first.
  void append_bits(std::uint64_t value, unsigned count);
  void append(const BitString& other);

  // Reads `count` bits starting at `pos` as an unsigned integer.
  std::uint64_t read_bits(std::size_t pos, unsigned count) const noexcept;

  void resize(std::size_t bit_length);
  BitString slice(std::size_t pos, std::size_t count) const;

  std::size_t count_ones() const noexcept;

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t size_ = 0;
};

class BitWriter {
 public:
  void write(bool bit) { out_.push_back(bit); }
  void write_bits(std::uint64_t value, unsigned count) { out_.append_bits(value, count); }
  void write(const BitString& bits) { out_.append(bits); }

  std::size_t bit_length() const noexcept { return out_.size(); }
  const BitString& bits() const noexcept { return out_; }
  BitString take() { return std::move(out_); }

 private:
  BitString out_;
};

// Non-owning cursor over a BitString.
class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(&bits) {}

  bool read();
  std::uint64_t read_bits(unsigned count);

  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bits_->size() - pos_; }
  bool at_end() const noexcept { return pos_ == bits_->size(); }

 private:
  const BitString* bits_;
  std::size_t pos_ = 0;
};

}  // namespace gpn
