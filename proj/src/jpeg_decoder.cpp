#include <array>
#include <optional>
#include <string>

#include "dctfuse/errors.hpp"
#include "dctfuse/jpeg_codec.hpp"
#include "jpeg_tables.hpp"

namespace dctfuse {

namespace {

using namespace detail;

// Canonical Huffman decoding table (ITU T.81 F.2.2.3).
struct HuffmanDecoder {
  std::array<int, 17> mincode{};
  std::array<int, 17> maxcode{};  // -1 when no code of that length
  std::array<int, 17> valptr{};
  std::array<std::uint8_t, 256> symbols{};
  bool defined = false;
};

class EntropyReader {
 public:
  EntropyReader(std::span<const std::uint8_t> stream, std::size_t start)
      : stream_(stream), pos_(start) {}

  int bit() {
    if (bits_ == 0) fill();
    --bits_;
    return (byte_ >> bits_) & 1;
  }

  int bits(int count) {
    int value = 0;
    for (int i = 0; i < count; ++i) value = (value << 1) | bit();
    return value;
  }

  int decode(const HuffmanDecoder& table) {
    int code = bit();
    for (int length = 1; length <= 16; ++length) {
      if (table.maxcode[length] >= 0 && code <= table.maxcode[length]) {
        return table.symbols[table.valptr[length] + code - table.mincode[length]];
      }
      code = (code << 1) | bit();
    }
    throw MalformedStream("invalid Huffman code", kSOS, pos_);
  }

  // Value of `count` received bits, sign-extended per T.81 F.2.2.1.
  int extend(int count) {
    if (count == 0) return 0;
    const int raw = bits(count);
    return raw < (1 << (count - 1)) ? raw - (1 << count) + 1 : raw;
  }

  // Drops the partial byte and consumes the RSTn marker that must follow.
  void restart() {
    bits_ = 0;
    while (pos_ < stream_.size() && stream_[pos_] == 0xFF &&
           pos_ + 1 < stream_.size() && stream_[pos_ + 1] == 0xFF) {
      ++pos_;
    }
    if (pos_ + 1 >= stream_.size()) {
      throw MalformedStream("truncated entropy-coded data", kSOS, stream_.size());
    }
    const std::uint8_t code = stream_[pos_ + 1];
    if (stream_[pos_] != 0xFF || code < kRST0 || code > kRST7) {
      throw MalformedStream("expected restart marker", code, pos_);
    }
    pos_ += 2;
  }

  std::size_t pos() const { return pos_; }

 private:
  void fill() {
    if (pos_ >= stream_.size()) {
      throw MalformedStream("truncated entropy-coded data", kSOS, stream_.size());
    }
    std::uint8_t b = stream_[pos_];
    if (b == 0xFF) {
      if (pos_ + 1 >= stream_.size()) {
        throw MalformedStream("truncated entropy-coded data", kSOS, stream_.size());
      }
      const std::uint8_t next = stream_[pos_ + 1];
      if (next != 0x00) {
        throw MalformedStream("marker inside entropy-coded data", next, pos_);
      }
      pos_ += 2;
    } else {
      ++pos_;
    }
    byte_ = b;
    bits_ = 8;
  }

  std::span<const std::uint8_t> stream_;
  std::size_t pos_;
  std::uint8_t byte_ = 0;
  int bits_ = 0;
};

struct FrameInfo {
  int width = 0;
  int height = 0;
  int component_id = 0;
  int quant_index = 0;
};

class Parser {
 public:
  explicit Parser(std::span<const std::uint8_t> stream) : s_(stream) {}

  BlockImage run() {
    if (s_.size() < 2 || s_[0] != 0xFF || s_[1] != kSOI) {
      throw MalformedStream("missing SOI marker", kSOI, 0);
    }
    pos_ = 2;
    for (;;) {
      const std::uint8_t marker = next_marker();
      const std::size_t marker_pos = pos_ - 2;
      if (marker == kEOI) {
        if (!image_) throw MalformedStream("EOI before any scan", marker, marker_pos);
        return std::move(*image_);
      }
      if (marker == kTEM) continue;
      if (marker == kSOI) throw MalformedStream("repeated SOI", marker, marker_pos);
      if (marker >= kRST0 && marker <= kRST7) {
        throw MalformedStream("restart marker outside scan", marker, marker_pos);
      }

      const std::size_t length = segment_length(marker);
      const std::size_t body = pos_;
      const std::size_t end = marker_pos + 2 + length;

      if (marker == kSOF0) {
        read_frame(body, end);
      } else if (marker == kSOF1) {
        throw Unsupported("extended sequential frame (SOF1)", marker, marker_pos);
      } else if (marker == kSOF2) {
        throw Unsupported("progressive frame (SOF2)", marker, marker_pos);
      } else if (marker == kSOF3) {
        throw Unsupported("lossless frame (SOF3)", marker, marker_pos);
      } else if ((marker >= 0xC5 && marker <= 0xC7) || (marker >= 0xC9 && marker <= 0xCB) ||
                 (marker >= 0xCD && marker <= 0xCF)) {
        throw Unsupported("hierarchical or arithmetic-coded frame", marker, marker_pos);
      } else if (marker == kDAC) {
        throw Unsupported("arithmetic coding conditioning (DAC)", marker, marker_pos);
      } else if (marker == kDHT) {
        read_huffman(body, end);
      } else if (marker == kDQT) {
        read_quant(body, end);
      } else if (marker == kDRI) {
        if (length != 4) throw MalformedStream("DRI length must be 4", marker, marker_pos);
        restart_interval_ = u16(body);
      } else if (marker == kSOS) {
        read_scan(body, end, marker_pos);
        continue;  // read_scan leaves pos_ after the entropy-coded data
      } else if ((marker >= kAPP0 && marker <= kAPP15) || marker == kCOM || marker == kDNL) {
        // skipped
      } else {
        throw MalformedStream("unknown marker", marker, marker_pos);
      }
      pos_ = end;
    }
  }

 private:
  // Returns the next marker code, consuming fill bytes.
  std::uint8_t next_marker() {
    if (pos_ >= s_.size()) {
      throw MalformedStream("unexpected end of stream (missing EOI)", last_marker_, s_.size());
    }
    if (s_[pos_] != 0xFF) throw MalformedStream("expected marker", last_marker_, pos_);
    while (pos_ < s_.size() && s_[pos_] == 0xFF) ++pos_;
    if (pos_ >= s_.size()) {
      throw MalformedStream("unexpected end of stream (missing EOI)", last_marker_, s_.size());
    }
    last_marker_ = s_[pos_++];
    return last_marker_;
  }

  std::size_t segment_length(std::uint8_t marker) {
    if (pos_ + 2 > s_.size()) throw MalformedStream("truncated segment length", marker, s_.size());
    const std::size_t length = u16(pos_);
    if (length < 2) throw MalformedStream("segment length below 2", marker, pos_);
    if (pos_ + length > s_.size()) throw MalformedStream("truncated segment", marker, s_.size());
    pos_ += 2;
    return length;
  }

  int u16(std::size_t at) const { return (s_[at] << 8) | s_[at + 1]; }

  void require(std::size_t at, std::size_t count, std::size_t end, std::uint8_t marker) const {
    if (at + count > end) throw MalformedStream("segment too short", marker, at);
  }

  void read_frame(std::size_t at, std::size_t end) {
    if (frame_) throw MalformedStream("more than one frame header", kSOF0, at - 4);
    require(at, 6, end, kSOF0);
    const int precision = s_[at];
    if (precision != 8) {
      throw Unsupported(std::to_string(precision) + "-bit sample precision", kSOF0, at);
    }
    FrameInfo frame;
    frame.height = u16(at + 1);
    frame.width = u16(at + 3);
    const int components = s_[at + 5];
    if (frame.height == 0) throw Unsupported("height defined by DNL", kSOF0, at + 1);
    if (frame.width == 0) throw MalformedStream("zero image width", kSOF0, at + 3);
    if (components != 1) {
      throw Unsupported(std::to_string(components) + "-component (color) frame", kSOF0, at + 5);
    }
    require(at + 6, 3, end, kSOF0);
    frame.component_id = s_[at + 6];
    const int h = s_[at + 7] >> 4;
    const int v = s_[at + 7] & 15;
    if (h < 1 || h > 4 || v < 1 || v > 4) {
      throw MalformedStream("invalid sampling factors", kSOF0, at + 7);
    }
    frame.quant_index = s_[at + 8];
    if (frame.quant_index > 3) throw MalformedStream("invalid quantization table id", kSOF0, at + 8);
    frame_ = frame;
  }

  void read_quant(std::size_t at, std::size_t end) {
    while (at < end) {
      const int pq = s_[at] >> 4;
      const int tq = s_[at] & 15;
      if (pq != 0) throw Unsupported("16-bit quantization table", kDQT, at);
      if (tq > 3) throw MalformedStream("invalid quantization table id", kDQT, at);
      require(at + 1, kBlockArea, end, kDQT);
      std::array<int, kBlockArea> natural{};
      for (int k = 0; k < kBlockArea; ++k) {
        const int q = s_[at + 1 + k];
        if (q == 0) throw MalformedStream("zero quantizer step", kDQT, at + 1 + k);
        natural[zigzag_order()[k]] = q;
      }
      quant_[tq] = QuantTable(natural);
      at += 1 + kBlockArea;
    }
  }

  void read_huffman(std::size_t at, std::size_t end) {
    while (at < end) {
      require(at, 17, end, kDHT);
      const int table_class = s_[at] >> 4;
      const int id = s_[at] & 15;
      if (table_class > 1 || id > 3) throw MalformedStream("invalid Huffman table id", kDHT, at);
      HuffmanDecoder& table = table_class == 0 ? dc_[id] : ac_[id];
      table = HuffmanDecoder{};
      int total = 0;
      std::array<int, 17> counts{};
      for (int l = 1; l <= 16; ++l) {
        counts[l] = s_[at + l];
        total += counts[l];
      }
      if (total > 256) throw MalformedStream("Huffman table with more than 256 symbols", kDHT, at);
      require(at + 17, static_cast<std::size_t>(total), end, kDHT);
      for (int i = 0; i < total; ++i) table.symbols[i] = s_[at + 17 + i];

      int code = 0;
      int k = 0;
      for (int l = 1; l <= 16; ++l) {
        table.valptr[l] = k;
        table.mincode[l] = code;
        code += counts[l];
        k += counts[l];
        table.maxcode[l] = counts[l] > 0 ? code - 1 : -1;
        if (code > (1 << l)) throw MalformedStream("over-subscribed Huffman code lengths", kDHT, at);
        code <<= 1;
      }
      table.defined = true;
      at += 17 + total;
    }
  }

  void read_scan(std::size_t at, std::size_t end, std::size_t marker_pos) {
    if (!frame_) throw MalformedStream("scan before frame header", kSOS, marker_pos);
    if (image_) throw MalformedStream("more than one scan", kSOS, marker_pos);
    require(at, 1, end, kSOS);
    const int count = s_[at];
    if (count != 1) throw MalformedStream("scan must hold exactly one component", kSOS, at);
    require(at + 1, 5, end, kSOS);
    if (s_[at + 1] != frame_->component_id) {
      throw MalformedStream("scan component not in frame", kSOS, at + 1);
    }
    const int dc_id = s_[at + 2] >> 4;
    const int ac_id = s_[at + 2] & 15;
    if (dc_id > 3 || ac_id > 3 || !dc_[dc_id].defined || !ac_[ac_id].defined) {
      throw MalformedStream("scan references undefined Huffman table", kSOS, at + 2);
    }
    const int ss = s_[at + 3];
    const int se = s_[at + 4];
    const int ah = s_[at + 5] >> 4;
    const int al = s_[at + 5] & 15;
    if (ss != 0 || se != 63 || ah != 0 || al != 0) {
      throw Unsupported("spectral selection or successive approximation", kSOS, at + 3);
    }
    const auto& quant = quant_[frame_->quant_index];
    if (!quant) throw MalformedStream("frame references undefined quantization table", kSOS, at);

    BlockImage image(GridGeometry{frame_->width, frame_->height}, *quant, CoeffForm::quantized);
    decode_blocks(image, dc_[dc_id], ac_[ac_id], end);
    image_ = std::move(image);
  }

  void decode_blocks(BlockImage& image, const HuffmanDecoder& dc, const HuffmanDecoder& ac,
                     std::size_t start) {
    EntropyReader reader(s_, start);
    const auto& zigzag = zigzag_order();
    int predictor = 0;
    std::size_t until_restart = restart_interval_;

    for (std::size_t n = 0; n < image.blocks.size(); ++n) {
      if (restart_interval_ != 0 && until_restart == 0) {
        reader.restart();
        predictor = 0;
        until_restart = restart_interval_;
      }
      CoeffBlock& block = image.blocks[n];

      const int dc_bits = reader.decode(dc);
      if (dc_bits > 11) throw MalformedStream("DC magnitude category above 11", kSOS, reader.pos());
      predictor += reader.extend(dc_bits);
      if (predictor > kMaxQuantizedMagnitude + 1 || predictor < -(kMaxQuantizedMagnitude + 1)) {
        throw MalformedStream("DC coefficient out of range", kSOS, reader.pos());
      }
      block.coeffs[0] = predictor;

      for (int k = 1; k < kBlockArea;) {
        const int rs = reader.decode(ac);
        const int run = rs >> 4;
        const int size = rs & 15;
        if (size == 0) {
          if (run != 15) break;  // EOB
          k += 16;
          continue;
        }
        if (size > 10) throw MalformedStream("AC magnitude category above 10", kSOS, reader.pos());
        k += run;
        if (k >= kBlockArea) throw MalformedStream("AC run past end of block", kSOS, reader.pos());
        block.coeffs[zigzag[k]] = reader.extend(size);
        ++k;
      }
      if (restart_interval_ != 0) --until_restart;
    }

    // Skip padding bits and any bytes up to the next real marker.
    std::size_t p = reader.pos();
    while (p + 1 < s_.size() && !(s_[p] == 0xFF && s_[p + 1] != 0x00 && s_[p + 1] != 0xFF)) ++p;
    if (p + 1 >= s_.size()) {
      throw MalformedStream("unexpected end of stream (missing EOI)", kSOS, s_.size());
    }
    pos_ = p;
  }

  std::span<const std::uint8_t> s_;
  std::size_t pos_ = 0;
  std::uint8_t last_marker_ = kSOI;
  std::optional<FrameInfo> frame_;
  std::array<std::optional<QuantTable>, 4> quant_;
  std::array<HuffmanDecoder, 4> dc_;
  std::array<HuffmanDecoder, 4> ac_;
  std::size_t restart_interval_ = 0;
  std::optional<BlockImage> image_;
};

}  // namespace

BlockImage parse_jpeg(std::span<const std::uint8_t> stream) {
  return Parser(stream).run();
}

}  // namespace dctfuse
