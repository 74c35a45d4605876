// Stream assembly and disassembly: messages -> codewords -> bridged symbol
// streams -> binary grids, plus frame-error accounting.
#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "loco/bigint.hpp"
#include "loco/enumeration.hpp"
#include "loco/grid.hpp"
#include "loco/otloco.hpp"
#include "loco/patterns.hpp"
#include "loco/stloco.hpp"

namespace loco {

struct StreamConfig {
  CodeFamily code = CodeFamily::ot;
  int m = 23;
};

inline int stream_message_bits(const StreamConfig& cfg) { return message_length(cfg.code, cfg.m); }
inline int stream_frame_cols(const StreamConfig& cfg) { return cfg.m + bridge_symbol_count(cfg.code); }

// Input bits consumed per frame. The ST scheme additionally carries one raw
// data bit per column on the uncoded lower track.
inline int stream_frame_input_bits(const StreamConfig& cfg) {
  int bits = stream_message_bits(cfg) + bridge_payload_bits(cfg.code);
  if (cfg.code == CodeFamily::st) bits += stream_frame_cols(cfg);
  return bits;
}

struct Frame {
  std::vector<std::uint8_t> message_bits;
  std::vector<std::uint8_t> payload_bits;
  std::vector<std::uint8_t> lower_bits;  // ST only, one per frame column
  Word codeword;
  Word bridge;
};

enum class FrameStatus { ok, constraint_violation, index_out_of_range, message_mismatch, bridge_mismatch };

inline const char* to_string(FrameStatus s) {
  switch (s) {
    case FrameStatus::ok: return "ok";
    case FrameStatus::constraint_violation: return "constraint_violation";
    case FrameStatus::index_out_of_range: return "index_out_of_range";
    case FrameStatus::message_mismatch: return "message_mismatch";
    case FrameStatus::bridge_mismatch: return "bridge_mismatch";
  }
  return "?";
}

namespace detail {

// One codec instance per stream call; OT/ST wrap their closed-form codecs,
// OP runs on the generic rank engine.
class StreamCodec {
 public:
  explicit StreamCodec(const StreamConfig& cfg) : cfg_(cfg) {
    switch (cfg.code) {
      case CodeFamily::ot: ot_.emplace(cfg.m); break;
      case CodeFamily::st: st_.emplace(cfg.m); break;
      case CodeFamily::op: op_counting_dfa().ensure(cfg.m); break;
    }
    s_ = stream_message_bits(cfg);
  }

  Word encode(const BigInt& index) const {
    switch (cfg_.code) {
      case CodeFamily::ot: return ot_->encode_index(index);
      case CodeFamily::st: return st_->encode_index(index);
      case CodeFamily::op: return op_counting_dfa().unrank(index, cfg_.m);
    }
    throw std::invalid_argument("bad code family");
  }

  struct Decoded {
    FrameStatus status = FrameStatus::ok;
    BigInt index;
  };

  Decoded decode(std::span<const std::uint8_t> cw) const {
    Decoded d;
    switch (cfg_.code) {
      case CodeFamily::ot: {
        auto r = ot_->decode(cw);
        d.status = r.status == OtCodec::Status::ok ? FrameStatus::ok
                   : r.status == OtCodec::Status::constraint_violation
                       ? FrameStatus::constraint_violation
                       : FrameStatus::index_out_of_range;
        d.index = std::move(r.index);
        return d;
      }
      case CodeFamily::st: {
        auto r = st_->decode(cw);
        d.status = r.status == StCodec::Status::ok ? FrameStatus::ok
                   : r.status == StCodec::Status::constraint_violation
                       ? FrameStatus::constraint_violation
                       : FrameStatus::index_out_of_range;
        d.index = std::move(r.index);
        return d;
      }
      case CodeFamily::op: {
        const auto& dfa = op_counting_dfa();
        if (static_cast<int>(cw.size()) != cfg_.m || !dfa.pattern_set().satisfies(cw)) {
          d.status = FrameStatus::constraint_violation;
          return d;
        }
        d.index = dfa.rank(cw);
        if (d.index >= pow2(s_)) d.status = FrameStatus::index_out_of_range;
        return d;
      }
    }
    throw std::invalid_argument("bad code family");
  }

 private:
  StreamConfig cfg_;
  int s_;
  std::optional<OtCodec> ot_;
  std::optional<StCodec> st_;
};

inline std::span<const std::uint8_t> tail2(const Word& cw) {
  const std::size_t n = std::min<std::size_t>(cw.size(), 2);
  return {cw.data() + cw.size() - n, n};
}

inline std::span<const std::uint8_t> head2(const Word* cw) {
  if (!cw) return {};
  return {cw->data(), std::min<std::size_t>(cw->size(), 2)};
}

// OP bridging is payload-free: two columns, the lexicographically first
// admissible pair drawn from symbols other than alpha/alpha^4 (those two can
// sit at the middle of a forbidden OP pattern).
inline Word op_bridge(std::span<const std::uint8_t> tail, std::span<const std::uint8_t> head) {
  const PatternSet& set = op_counting_dfa().pattern_set();
  static constexpr std::array<std::uint8_t, 6> alphabet{0, 1, 3, 4, 6, 7};
  Word window;
  for (auto d1 : alphabet) {
    for (auto d0 : alphabet) {
      window.assign(tail.begin(), tail.end());
      window.push_back(d1);
      window.push_back(d0);
      window.insert(window.end(), head.begin(), head.end());
      if (set.satisfies(window)) return {d1, d0};
    }
  }
  throw std::logic_error("no admissible OP bridge pair");
}

inline Word make_bridge(const StreamConfig& cfg, const Word& cw, const Word* next_cw, int payload) {
  switch (cfg.code) {
    case CodeFamily::ot: {
      auto d = ot_bridge_encode(tail2(cw), head2(next_cw), payload);
      return {d[0], d[1]};
    }
    case CodeFamily::st: {
      auto d = st_bridge_encode(tail2(cw), head2(next_cw), payload);
      return {d[0], d[1], d[2]};
    }
    case CodeFamily::op:
      return op_bridge(tail2(cw), head2(next_cw));
  }
  throw std::invalid_argument("bad code family");
}

inline std::optional<int> read_bridge(const StreamConfig& cfg, const Word& cw, const Word* next_cw,
                                      const Word& bridge) {
  switch (cfg.code) {
    case CodeFamily::ot:
      return ot_bridge_decode(tail2(cw), {bridge[0], bridge[1]}, head2(next_cw));
    case CodeFamily::st:
      return st_bridge_decode(tail2(cw), {bridge[0], bridge[1], bridge[2]}, head2(next_cw));
    case CodeFamily::op:
      return bridge == op_bridge(tail2(cw), head2(next_cw)) ? std::optional<int>(0) : std::nullopt;
  }
  throw std::invalid_argument("bad code family");
}

}  // namespace detail

struct EncodedStream {
  StreamConfig config;
  std::vector<Frame> frames;

  // Codewords and bridges concatenated left to right.
  Word symbols() const {
    Word out;
    for (const Frame& f : frames) {
      out.insert(out.end(), f.codeword.begin(), f.codeword.end());
      out.insert(out.end(), f.bridge.begin(), f.bridge.end());
    }
    return out;
  }

  std::vector<std::uint8_t> lower_row() const {
    std::vector<std::uint8_t> out;
    for (const Frame& f : frames) out.insert(out.end(), f.lower_bits.begin(), f.lower_bits.end());
    return out;
  }

  BitGrid to_grid() const {
    if (config.code == CodeFamily::st) return assemble(TrackTriple{symbols(), lower_row()});
    return expand_word(symbols(), 8);
  }

  // Level digits space-separated, '|' marking bridge boundaries.
  std::string symbol_text() const {
    std::string out;
    for (const Frame& f : frames) {
      if (!out.empty()) out += " | ";
      out += word_to_text(f.codeword);
      out += " | ";
      out += word_to_text(f.bridge);
    }
    return out;
  }
};

// Lay frames out left to right; every frame is a codeword followed by its
// bridge, and each bridge is computed from the actual boundary (the final
// frame sees an empty head).
inline EncodedStream encode_stream(const std::vector<std::uint8_t>& bits, const StreamConfig& cfg) {
  const int fb = stream_frame_input_bits(cfg);
  if (bits.size() % static_cast<std::size_t>(fb) != 0)
    throw std::invalid_argument("bitstream length must be a multiple of " + std::to_string(fb));
  const std::size_t count = bits.size() / static_cast<std::size_t>(fb);
  const int s = stream_message_bits(cfg);
  const int pb = bridge_payload_bits(cfg.code);

  EncodedStream out;
  out.config = cfg;
  out.frames.resize(count);
  const detail::StreamCodec codec(cfg);
  for (std::size_t f = 0; f < count; ++f) {
    const std::uint8_t* p = bits.data() + f * static_cast<std::size_t>(fb);
    Frame& fr = out.frames[f];
    fr.message_bits.assign(p, p + s);
    fr.payload_bits.assign(p + s, p + s + pb);
    if (cfg.code == CodeFamily::st)
      fr.lower_bits.assign(p + s + pb, p + fb);
    fr.codeword = codec.encode(bits_to_bigint(fr.message_bits.data(), fr.message_bits.size()));
  }
  for (std::size_t f = 0; f < count; ++f) {
    const Word* next = f + 1 < count ? &out.frames[f + 1].codeword : nullptr;
    const int payload = pb ? static_cast<int>(bits_to_bigint(out.frames[f].payload_bits.data(),
                                                             out.frames[f].payload_bits.size()))
                           : 0;
    out.frames[f].bridge = detail::make_bridge(cfg, out.frames[f].codeword, next, payload);
  }
  return out;
}

struct DecodeReport {
  std::vector<std::uint8_t> bits;  // recovered frame inputs, zeros where undecodable
  std::vector<FrameStatus> frame_status;
  std::array<std::size_t, 5> counts{};  // indexed by FrameStatus

  std::size_t frames() const { return frame_status.size(); }
  std::size_t frame_errors() const { return frames() - counts[0]; }
  bool ok() const { return frame_errors() == 0; }
};

// Decode a received symbol stream (with the received lower row for ST).
// When `expected` is supplied, message and payload contents are verified
// against it; the per-frame outcome is the first failed check in the
// reading-setup order.
inline DecodeReport decode_symbols(const Word& symbols, const std::vector<std::uint8_t>* lower,
                                   const StreamConfig& cfg,
                                   const std::vector<std::uint8_t>* expected = nullptr) {
  const int cols = stream_frame_cols(cfg);
  if (symbols.size() % static_cast<std::size_t>(cols) != 0)
    throw std::invalid_argument("stream length must be a multiple of the frame size");
  const std::size_t count = symbols.size() / static_cast<std::size_t>(cols);
  const int s = stream_message_bits(cfg);
  const int pb = bridge_payload_bits(cfg.code);
  const int fb = stream_frame_input_bits(cfg);
  if (expected && expected->size() != count * static_cast<std::size_t>(fb))
    throw std::invalid_argument("expected bitstream length mismatch");
  if (cfg.code == CodeFamily::st && lower && lower->size() != symbols.size())
    throw std::invalid_argument("lower row length mismatch");

  std::vector<Word> codewords(count), bridges(count);
  for (std::size_t f = 0; f < count; ++f) {
    auto base = symbols.begin() + static_cast<std::ptrdiff_t>(f * static_cast<std::size_t>(cols));
    codewords[f].assign(base, base + cfg.m);
    bridges[f].assign(base + cfg.m, base + cols);
  }

  DecodeReport rep;
  rep.bits.assign(count * static_cast<std::size_t>(fb), 0);
  rep.frame_status.resize(count);
  const detail::StreamCodec codec(cfg);
  for (std::size_t f = 0; f < count; ++f) {
    std::uint8_t* outp = rep.bits.data() + f * static_cast<std::size_t>(fb);
    const std::uint8_t* expp = expected ? expected->data() + f * static_cast<std::size_t>(fb) : nullptr;
    FrameStatus status = FrameStatus::ok;

    auto cw = codec.decode(codewords[f]);
    status = cw.status;
    if (status == FrameStatus::ok)
      std::copy_n(bigint_to_bits(cw.index, s).data(), s, outp);

    const Word* next = f + 1 < count ? &codewords[f + 1] : nullptr;
    auto payload = detail::read_bridge(cfg, codewords[f], next, bridges[f]);
    if (payload && pb)
      std::copy_n(bigint_to_bits(BigInt(*payload), pb).data(), pb, outp + s);

    if (cfg.code == CodeFamily::st && lower) {
      auto lp = lower->begin() + static_cast<std::ptrdiff_t>(f * static_cast<std::size_t>(cols));
      std::copy_n(lp, cols, outp + s + pb);
    }

    if (status == FrameStatus::ok && expected) {
      const bool message_ok = std::equal(outp, outp + s, expp) &&
                              (cfg.code != CodeFamily::st || !lower ||
                               std::equal(outp + s + pb, outp + fb, expp + s + pb));
      if (!message_ok) status = FrameStatus::message_mismatch;
    }
    if (status == FrameStatus::ok) {
      if (!payload)
        status = FrameStatus::bridge_mismatch;
      else if (expected && pb && !std::equal(outp + s, outp + s + pb, expp + s))
        status = FrameStatus::bridge_mismatch;
    }

    rep.frame_status[f] = status;
    ++rep.counts[static_cast<std::size_t>(status)];
  }
  return rep;
}

inline DecodeReport decode_stream(const BitGrid& grid, const StreamConfig& cfg,
                                  const std::vector<std::uint8_t>* expected = nullptr) {
  const int order = cfg.code == CodeFamily::st ? 4 : 8;
  Word symbols;
  std::vector<std::uint8_t> lower;
  symbols.reserve(static_cast<std::size_t>(grid.cols()));
  for (int c = 0; c < grid.cols(); ++c) {
    if (order == 8) {
      const std::array<std::uint8_t, 3> col{grid.at(0, c), grid.at(1, c), grid.at(2, c)};
      symbols.push_back(from_column(std::span<const std::uint8_t>(col.data(), 3), 8).level);
    } else {
      const std::array<std::uint8_t, 2> col{grid.at(0, c), grid.at(1, c)};
      symbols.push_back(from_column(std::span<const std::uint8_t>(col.data(), 2), 4).level);
      lower.push_back(grid.at(2, c));
    }
  }
  return decode_symbols(symbols, lower.empty() ? nullptr : &lower, cfg, expected);
}

// Single-codeword conveniences for the CLI.
inline Word framing_encode_index(CodeFamily fam, int m, const BigInt& index) {
  return detail::StreamCodec(StreamConfig{fam, m}).encode(index);
}

inline BigInt framing_rank(CodeFamily fam, int m, const Word& cw) {
  if (static_cast<int>(cw.size()) != m) throw std::invalid_argument("codeword length mismatch");
  switch (fam) {
    case CodeFamily::ot: return OtCodec(m).index_of(cw);
    case CodeFamily::st: return StCodec(m).index_of(cw);
    case CodeFamily::op: {
      const auto& dfa = op_counting_dfa();
      if (!dfa.pattern_set().satisfies(cw))
        throw ConstraintViolation("codeword contains a forbidden pattern");
      return dfa.rank(cw);
    }
  }
  throw std::invalid_argument("bad code family");
}

// ---------------------------------------------------------------------------
// Stream text parsing ("1 2 3 | 6 0 | ..."): sections alternate codeword and
// bridge; lengths are validated against the configuration.

inline Word parse_symbol_text(const std::string& text, const StreamConfig& cfg) {
  const int order = cfg.code == CodeFamily::st ? 4 : 8;
  std::vector<Word> sections(1);
  for (char ch : text) {
    if (ch == '|') {
      sections.emplace_back();
    } else if (ch >= '0' && ch <= '9') {
      sections.back().push_back(from_digit(ch, order).level);
    } else if (ch != ' ' && ch != '\t' && ch != '\n' && ch != '\r') {
      throw std::invalid_argument("unexpected character in symbol stream");
    }
  }
  const int bridge_len = bridge_symbol_count(cfg.code);
  Word flat;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const int want = i % 2 == 0 ? cfg.m : bridge_len;
    if (static_cast<int>(sections[i].size()) != want)
      throw std::invalid_argument("symbol stream section has the wrong length");
    flat.insert(flat.end(), sections[i].begin(), sections[i].end());
  }
  if (sections.size() % 2 != 0)
    throw std::invalid_argument("symbol stream must end with a bridge section");
  return flat;
}

// ---------------------------------------------------------------------------
// Binary frame container: magic "LOCO1", code id byte, m (u16 BE), frame
// count (u32 BE), then the frame input bits packed MSB-first.

inline constexpr char kContainerMagic[5] = {'L', 'O', 'C', 'O', '1'};

inline std::uint8_t container_code_id(CodeFamily f) {
  return f == CodeFamily::ot ? 1 : f == CodeFamily::st ? 2 : 3;
}

inline void write_container(std::ostream& os, const StreamConfig& cfg,
                            const std::vector<std::uint8_t>& bits) {
  const int fb = stream_frame_input_bits(cfg);
  if (bits.size() % static_cast<std::size_t>(fb) != 0)
    throw std::invalid_argument("bitstream length must be a multiple of the frame input size");
  const std::uint32_t count = static_cast<std::uint32_t>(bits.size() / static_cast<std::size_t>(fb));
  os.write(kContainerMagic, 5);
  os.put(static_cast<char>(container_code_id(cfg.code)));
  os.put(static_cast<char>((cfg.m >> 8) & 0xff));
  os.put(static_cast<char>(cfg.m & 0xff));
  for (int shift = 24; shift >= 0; shift -= 8) os.put(static_cast<char>((count >> shift) & 0xff));
  std::uint8_t acc = 0;
  int nbits = 0;
  for (std::uint8_t b : bits) {
    acc = static_cast<std::uint8_t>((acc << 1) | (b & 1));
    if (++nbits == 8) {
      os.put(static_cast<char>(acc));
      acc = 0;
      nbits = 0;
    }
  }
  if (nbits) os.put(static_cast<char>(acc << (8 - nbits)));
}

struct Container {
  StreamConfig config;
  std::vector<std::uint8_t> bits;
};

inline Container read_container(std::istream& is) {
  char magic[5];
  if (!is.read(magic, 5) || !std::equal(magic, magic + 5, kContainerMagic))
    throw std::invalid_argument("not a LOCO1 container");
  const int code_id = is.get();
  Container c;
  switch (code_id) {
    case 1: c.config.code = CodeFamily::ot; break;
    case 2: c.config.code = CodeFamily::st; break;
    case 3: c.config.code = CodeFamily::op; break;
    default: throw std::invalid_argument("unknown code id in container");
  }
  const int hi = is.get(), lo = is.get();
  c.config.m = (hi << 8) | lo;
  std::uint32_t count = 0;
  for (int k = 0; k < 4; ++k) count = (count << 8) | static_cast<std::uint32_t>(is.get());
  if (!is) throw std::invalid_argument("truncated container header");
  const std::size_t total = static_cast<std::size_t>(count) *
                            static_cast<std::size_t>(stream_frame_input_bits(c.config));
  c.bits.reserve(total);
  int ch = 0;
  while (c.bits.size() < total && (ch = is.get()) != std::char_traits<char>::eof()) {
    for (int shift = 7; shift >= 0 && c.bits.size() < total; --shift)
      c.bits.push_back(static_cast<std::uint8_t>((ch >> shift) & 1));
  }
  if (c.bits.size() != total) throw std::invalid_argument("truncated container payload");
  return c;
}

}  // namespace loco
