#include <cmath>
#include <string>

#include "dctfuse/errors.hpp"
#include "dctfuse/jpeg_codec.hpp"
#include "jpeg_tables.hpp"

namespace dctfuse {

namespace {

using namespace detail;

constexpr int kMaxAc = 1023;
constexpr int kMaxDc = 2047;

struct HuffmanEncoder {
  std::array<std::uint16_t, 256> code{};
  std::array<std::uint8_t, 256> length{};

  explicit HuffmanEncoder(const HuffmanSpec& spec) {
    int next = 0;
    std::size_t k = 0;
    for (int l = 1; l <= 16; ++l) {
      for (int i = 0; i < spec.counts[l - 1]; ++i, ++k) {
        code[spec.symbols[k]] = static_cast<std::uint16_t>(next++);
        length[spec.symbols[k]] = static_cast<std::uint8_t>(l);
      }
      next <<= 1;
    }
  }
};

class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void put(std::uint32_t value, int count) {
    for (int i = count - 1; i >= 0; --i) {
      acc_ = static_cast<std::uint8_t>((acc_ << 1) | ((value >> i) & 1u));
      if (++bits_ == 8) emit();
    }
  }

  void symbol(const HuffmanEncoder& table, int sym) {
    put(table.code[sym], table.length[sym]);
  }

  // Category bits of `value` (one's complement for negatives).
  void magnitude(int value, int category) {
    if (category == 0) return;
    const int raw = value < 0 ? value - 1 : value;
    put(static_cast<std::uint32_t>(raw) & ((1u << category) - 1u), category);
  }

  // Pads the final byte with 1-bits.
  void flush() {
    while (bits_ != 0) put(1, 1);
  }

 private:
  void emit() {
    out_.push_back(acc_);
    if (acc_ == 0xFF) out_.push_back(0x00);
    acc_ = 0;
    bits_ = 0;
  }

  std::vector<std::uint8_t>& out_;
  std::uint8_t acc_ = 0;
  int bits_ = 0;
};

void put_marker(std::vector<std::uint8_t>& out, std::uint8_t marker) {
  out.push_back(0xFF);
  out.push_back(marker);
}

void put_u16(std::vector<std::uint8_t>& out, int value) {
  out.push_back(static_cast<std::uint8_t>(value >> 8));
  out.push_back(static_cast<std::uint8_t>(value & 0xFF));
}

void put_huffman(std::vector<std::uint8_t>& out, int class_and_id, const HuffmanSpec& spec) {
  out.push_back(static_cast<std::uint8_t>(class_and_id));
  out.insert(out.end(), spec.counts.begin(), spec.counts.end());
  out.insert(out.end(), spec.symbols.begin(), spec.symbols.end());
}

int checked_level(double value, std::size_t block, int index) {
  const double rounded = std::nearbyint(value);
  if (rounded != value) {
    throw CoefficientOutOfRange("non-integral quantized coefficient in block " +
                                std::to_string(block));
  }
  const int limit = index == 0 ? kMaxDc : kMaxAc;
  if (rounded > limit || rounded < -limit) {
    throw CoefficientOutOfRange("coefficient " + std::to_string(index) + " of block " +
                                std::to_string(block) + " is " +
                                std::to_string(static_cast<long>(rounded)) +
                                ", outside +/-" + std::to_string(limit));
  }
  return static_cast<int>(rounded);
}

}  // namespace

std::vector<std::uint8_t> emit_jpeg(const BlockImage& image) {
  if (image.form() != CoeffForm::quantized) {
    throw FormMismatch("emit_jpeg requires quantized coefficients");
  }
  const auto& geom = image.geometry;
  if (geom.width <= 0 || geom.height <= 0 || geom.width > 0xFFFF || geom.height > 0xFFFF) {
    throw InvalidArgument("JPEG dimensions must be in 1..65535");
  }
  if (image.blocks.size() != geom.block_count()) {
    throw DimensionMismatch("block grid does not match pixel dimensions");
  }

  static const HuffmanEncoder dc_table(standard_dc_luma());
  static const HuffmanEncoder ac_table(standard_ac_luma());
  const auto& zigzag = zigzag_order();

  std::vector<std::uint8_t> out;
  out.reserve(1024 + image.blocks.size() * 16);

  put_marker(out, kSOI);

  put_marker(out, kAPP0);
  put_u16(out, 16);
  for (char c : {'J', 'F', 'I', 'F', '\0'}) out.push_back(static_cast<std::uint8_t>(c));
  out.insert(out.end(), {1, 1, 0, 0, 1, 0, 1, 0, 0});

  put_marker(out, kDQT);
  put_u16(out, 2 + 1 + kBlockArea);
  out.push_back(0);
  for (int k = 0; k < kBlockArea; ++k) out.push_back(image.quant.steps()[zigzag[k]]);

  put_marker(out, kSOF0);
  put_u16(out, 11);
  out.push_back(8);
  put_u16(out, geom.height);
  put_u16(out, geom.width);
  out.insert(out.end(), {1, 1, 0x11, 0});

  const auto dc_spec = standard_dc_luma();
  const auto ac_spec = standard_ac_luma();
  put_marker(out, kDHT);
  put_u16(out, static_cast<int>(2 + 17 + dc_spec.symbols.size() + 17 + ac_spec.symbols.size()));
  put_huffman(out, 0x00, dc_spec);
  put_huffman(out, 0x10, ac_spec);

  put_marker(out, kSOS);
  put_u16(out, 8);
  out.insert(out.end(), {1, 1, 0x00, 0, 63, 0});

  BitWriter writer(out);
  int predictor = 0;
  for (std::size_t n = 0; n < image.blocks.size(); ++n) {
    const auto& coeffs = image.blocks[n].coeffs;

    const int dc = checked_level(coeffs[0], n, 0);
    const int diff = dc - predictor;
    if (diff > kMaxDc || diff < -kMaxDc) {
      throw CoefficientOutOfRange("DC difference " + std::to_string(diff) + " in block " +
                                  std::to_string(n) + " exceeds +/-2047");
    }
    predictor = dc;
    const int dc_category = magnitude_category(diff);
    writer.symbol(dc_table, dc_category);
    writer.magnitude(diff, dc_category);

    int run = 0;
    for (int k = 1; k < kBlockArea; ++k) {
      const int level = checked_level(coeffs[zigzag[k]], n, zigzag[k]);
      if (level == 0) {
        ++run;
        continue;
      }
      while (run > 15) {
        writer.symbol(ac_table, 0xF0);
        run -= 16;
      }
      const int category = magnitude_category(level);
      writer.symbol(ac_table, (run << 4) | category);
      writer.magnitude(level, category);
      run = 0;
    }
    if (run > 0) writer.symbol(ac_table, 0x00);
  }
  writer.flush();

  put_marker(out, kEOI);
  return out;
}

}  // namespace dctfuse
