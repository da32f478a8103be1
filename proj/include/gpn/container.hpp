#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gpn/bitio.hpp"
#include "gpn/fma.hpp"
#include "gpn/multichannel.hpp"

namespace gpn {

// On-disk layout (multi-byte integers little-endian, bits MSB-first):
//
//   "GPNC"  version(1)=0x01  algorithm(1)  N(1)  seed(8)
//   MV2 family:  rounds(1)  rounds x true-length(8)
//   clone only:  count(1)=N  count x M_K(8)
//   FMA:         M(1)  policy(1)  original-length(8)
//   sections:    MV2 family: one per round flag stream, then the core
//                FMA:        the payload
//                each one is bit-length(8) followed by ceil(len/8) bytes
//   CRC-32 of everything above (4)
inline constexpr std::array<std::uint8_t, 4> kContainerMagic = {0x47, 0x50, 0x4E, 0x43};
inline constexpr std::uint8_t kContainerVersion = 0x01;

struct Container {
  Algorithm algorithm = Algorithm::mv2;
  unsigned n = 0;
  std::uint64_t seed = 0;

  std::vector<std::uint64_t> round_lengths;   // MV2 family, one per round
  std::vector<std::uint64_t> multiplicities;  // clone, M_1..M_N

  unsigned m = 0;  // FMA
  FmaPolicy policy = FmaPolicy::canonical;
  std::uint64_t original_bit_length = 0;

  std::vector<BitString> flags;  // MV2 family, one per round
  BitString core;                // core, or the FMA payload

  friend bool operator==(const Container&, const Container&) = default;
};

std::vector<std::uint8_t> write_container(const Container& c);

// Validates magic and version before anything else. Every malformed input
// raises gpn::Error (bad-magic, bad-version, truncated-section,
// length-overflow, checksum-mismatch, corrupt-stream or invalid-argument).
Container read_container(std::span<const std::uint8_t> bytes);

Container make_container(const Codebook& cb, const MultiRoundOutput& out);
Container make_container(const FmaConfig& cfg, const FmaStream& stream);

Codebook codebook_of(const Container& c);
MultiRoundOutput rounds_of(const Container& c);
FmaConfig fma_config_of(const Container& c);
FmaStream fma_stream_of(const Container& c);

// Two-channel layout: the flag streams go to a separate file ("GPNF",
// version, round count, one section per round, CRC-32) and the container
// keeps empty flag sections in their place.
inline constexpr std::array<std::uint8_t, 4> kFlagFileMagic = {0x47, 0x50, 0x4E, 0x46};

std::vector<std::uint8_t> write_flag_file(std::span<const BitString> flags);
std::vector<BitString> read_flag_file(std::span<const std::uint8_t> bytes);

// Full inverse for any algorithm, driven only by the container metadata.
BitString decode_container(const Container& c);

}  // namespace gpn
