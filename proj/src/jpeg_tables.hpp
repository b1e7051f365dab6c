#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace dctfuse::detail {

// Marker codes (second byte after 0xFF).
inline constexpr std::uint8_t kSOF0 = 0xC0;
inline constexpr std::uint8_t kSOF1 = 0xC1;
inline constexpr std::uint8_t kSOF2 = 0xC2;
inline constexpr std::uint8_t kSOF3 = 0xC3;
inline constexpr std::uint8_t kDHT = 0xC4;
inline constexpr std::uint8_t kDAC = 0xCC;
inline constexpr std::uint8_t kRST0 = 0xD0;
inline constexpr std::uint8_t kRST7 = 0xD7;
inline constexpr std::uint8_t kSOI = 0xD8;
inline constexpr std::uint8_t kEOI = 0xD9;
inline constexpr std::uint8_t kSOS = 0xDA;
inline constexpr std::uint8_t kDQT = 0xDB;
inline constexpr std::uint8_t kDNL = 0xDC;
inline constexpr std::uint8_t kDRI = 0xDD;
inline constexpr std::uint8_t kAPP0 = 0xE0;
inline constexpr std::uint8_t kAPP15 = 0xEF;
inline constexpr std::uint8_t kCOM = 0xFE;
inline constexpr std::uint8_t kTEM = 0x01;

// Huffman table as stored in DHT: code counts per length 1..16 + symbols.
struct HuffmanSpec {
  std::span<const std::uint8_t, 16> counts;
  std::span<const std::uint8_t> symbols;
};

HuffmanSpec standard_dc_luma();
HuffmanSpec standard_ac_luma();

// Magnitude category: number of bits needed for |value|.
inline int magnitude_category(int value) {
  unsigned magnitude = static_cast<unsigned>(value < 0 ? -value : value);
  int bits = 0;
  while (magnitude != 0) {
    ++bits;
    magnitude >>= 1;
  }
  return bits;
}

}  // namespace dctfuse::detail
