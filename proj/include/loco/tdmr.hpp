// Desk-scale TDMR channel surrogate: geometry/density/energy parameters, a
// 3x3 interference kernel with energy-scaled media noise, hard-decision
// reading, PIS/IPIS/random error profiling, density/energy sweeps with
// energy-fair rate scaling, and the OP -> OT reconfiguration controller.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "loco/framing.hpp"
#include "loco/grid.hpp"
#include "loco/patterns.hpp"

namespace loco {

// Kernel and noise knobs. Center weight is 1; Manhattan-1 neighbors weigh
// w1 = k1 * D_TD, corners w2 = k2 * w1; media noise is zero-mean Gaussian
// with sigma = k3 / sqrt(E_TD / e0). Interference entering the upper/lower
// rows of the group is scaled by edge_protection (guard bands and the outer
// read positions leave the middle track with the highest interference);
// interference from outside the 3-track group is zero.
struct SurrogateConstants {
  double k1 = 0.18;
  double k2 = 0.5;
  double k3 = 0.5;
  double e0 = 100.0;
  double edge_protection = 0.5;
};

struct ChannelParams {
  double pw50_ct = 20.0;
  double pw50_dt = 14.0;
  double tw = 20.0;
  double bp = 14.0;
  SurrogateConstants k;

  void validate() const {
    if (pw50_ct <= 0 || pw50_dt <= 0 || tw <= 0 || bp <= 0)
      throw std::invalid_argument("channel geometry must be positive");
  }

  double density() const {
    validate();
    return (pw50_ct * pw50_dt) / (tw * bp);
  }
  double energy() const {
    validate();
    return tw * bp;
  }
  double w1() const { return k.k1 * density(); }
  double w2() const { return k.k2 * w1(); }
  double noise_sigma() const { return k.k3 / std::sqrt(energy() / k.e0); }
};

inline double density(const ChannelParams& p) { return p.density(); }
inline double energy(const ChannelParams& p) { return p.energy(); }

// ---------------------------------------------------------------------------
// Counter-based per-frame RNG streams: results depend only on
// (seed, point, frame, purpose), never on worker scheduling.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

enum class RngPurpose : std::uint64_t { data = 1, noise = 2 };

inline std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t point, std::uint64_t frame,
                                 RngPurpose purpose) {
  std::uint64_t h = splitmix64(seed ^ 0x6f636f6cull);
  h = splitmix64(h ^ point);
  h = splitmix64(h ^ frame);
  h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
  return std::mt19937_64(h);
}

// ---------------------------------------------------------------------------
// Channel and reader.

// Readback over a column range [c0, c1) using the whole written grid for
// interference and the supplied rng for media noise (cells visited in a
// fixed column-major order).
inline void apply_channel_span(const BitGrid& written, const ChannelParams& p, int c0, int c1,
                               std::mt19937_64& rng, RealGrid& out) {
  const double w1 = p.w1(), w2 = p.w2(), sigma = p.noise_sigma();
  const double guard = p.k.edge_protection;
  std::normal_distribution<double> noise(0.0, sigma);
  for (int c = c0; c < c1; ++c) {
    for (int r = 0; r < 3; ++r) {
      const double x = written.at(r, c) ? 1.0 : -1.0;
      const double row_scale = r == 1 ? 1.0 : guard;
      double acc = x;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          if (!written.in_range(r + dr, c + dc)) continue;
          const double w = (dr == 0 || dc == 0) ? w1 : w2;
          acc += row_scale * w * (written.at(r + dr, c + dc) ? 1.0 : -1.0);
        }
      }
      out.at(r, c) = acc + noise(rng);
    }
  }
}

inline RealGrid apply_channel(const BitGrid& written, const ChannelParams& p, std::mt19937_64& rng) {
  RealGrid out(written.cols());
  apply_channel_span(written, p, 0, written.cols(), rng, out);
  return out;
}

// Hard decision: values <= 0 read as 0, values > 0 read as 1.
inline BitGrid read_hard(const RealGrid& g) {
  BitGrid out(g.cols());
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < g.cols(); ++c) out.at(r, c) = g.at(r, c) > 0.0 ? 1 : 0;
  return out;
}

// ---------------------------------------------------------------------------
// Error profiling: each erroneous bit is classified by the written
// neighborhood of the 3x3 grid centered on it; victims near an edge use the
// available neighbors only.

struct ErrorTally {
  std::uint64_t pis = 0;
  std::uint64_t ipis = 0;
  std::uint64_t random = 0;

  std::uint64_t total() const { return pis + ipis + random; }
  double pis_share() const { return total() ? static_cast<double>(pis) / static_cast<double>(total()) : 0.0; }
  double ipis_share() const { return total() ? static_cast<double>(ipis) / static_cast<double>(total()) : 0.0; }
  double random_share() const {
    return total() ? static_cast<double>(random) / static_cast<double>(total()) : 0.0;
  }

  ErrorTally& operator+=(const ErrorTally& o) {
    pis += o.pis;
    ipis += o.ipis;
    random += o.random;
    return *this;
  }
};

struct ErrorProfile {
  ErrorTally all;     // every track
  ErrorTally middle;  // middle track only

  ErrorProfile& operator+=(const ErrorProfile& o) {
    all += o.all;
    middle += o.middle;
    return *this;
  }
};

inline void profile_errors_span(const BitGrid& written, const BitGrid& read, int c0, int c1,
                                ErrorProfile& prof) {
  for (int r = 0; r < 3; ++r) {
    for (int c = c0; c < c1; ++c) {
      if (written.at(r, c) == read.at(r, c)) continue;
      GridClass cls = classify_at(written, r, c);
      ErrorTally& t = prof.all;
      if (counts_as_pis(cls))
        ++t.pis;
      else if (cls == GridClass::ipis)
        ++t.ipis;
      else
        ++t.random;
      if (r == 1) {
        if (counts_as_pis(cls))
          ++prof.middle.pis;
        else if (cls == GridClass::ipis)
          ++prof.middle.ipis;
        else
          ++prof.middle.random;
      }
    }
  }
}

inline ErrorProfile profile_errors(const BitGrid& written, const BitGrid& read) {
  if (written.cols() != read.cols()) throw std::invalid_argument("grid shapes differ");
  ErrorProfile prof;
  profile_errors_span(written, read, 0, written.cols(), prof);
  return prof;
}

// ---------------------------------------------------------------------------
// Sweeps.

enum class SweepKind { density, energy };
enum class SimCode { uncoded, ot, op, st };

inline const char* sim_code_name(SimCode c) {
  switch (c) {
    case SimCode::uncoded: return "uncoded";
    case SimCode::ot: return "ot";
    case SimCode::op: return "op";
    case SimCode::st: return "st";
  }
  return "?";
}

inline SimCode sim_code_from_name(const std::string& s) {
  if (s == "uncoded") return SimCode::uncoded;
  if (s == "ot") return SimCode::ot;
  if (s == "op") return SimCode::op;
  if (s == "st") return SimCode::st;
  throw std::invalid_argument("unknown simulation code: " + s);
}

struct SimConfig {
  SweepKind kind = SweepKind::density;
  SimCode code = SimCode::uncoded;
  int frames = 1000;
  std::uint64_t seed = 1;
  int m = 23;
  std::vector<double> points;  // empty -> defaults for the sweep kind
  SurrogateConstants k;
  int threads = 0;  // 0 -> LOCO_THREADS env var, then hardware concurrency
};

inline std::vector<double> default_sweep_points(SweepKind kind) {
  if (kind == SweepKind::density) return {0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6};
  return {78.0, 120.0, 200.0, 395.0, 600.0, 888.6, 1300.0, 2000.0, 3000.0};
}

// Uncoded geometry at one sweep point. Density sweep: PW50s fixed at
// (20, 14) nm, TW/BP swept at ratio 10/7. Energy sweep: PW50_DT = BP = 7 nm,
// PW50_CT = TW swept, so D_TD stays at 1.
inline ChannelParams params_at(SweepKind kind, double point, const SurrogateConstants& k) {
  ChannelParams p;
  p.k = k;
  if (kind == SweepKind::density) {
    if (point <= 0) throw std::invalid_argument("density must be positive");
    p.pw50_ct = 20.0;
    p.pw50_dt = 14.0;
    p.tw = 20.0 / std::sqrt(point);
    p.bp = 14.0 / std::sqrt(point);
  } else {
    if (point <= 0) throw std::invalid_argument("energy must be positive");
    p.pw50_dt = 7.0;
    p.bp = 7.0;
    p.tw = point / 7.0;
    p.pw50_ct = p.tw;
  }
  return p;
}

struct SweepPoint {
  double value = 0.0;
  double fer_all = 0.0;
  double fer_mid = 0.0;
  double ber_all = 0.0;
  double ber_mid = 0.0;
  ErrorProfile profile;
  std::string code_id;
  std::uint64_t written_rtis = 0;  // grid_scan hits in the written stream
};

namespace detail {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LOCO_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

template <typename Fn>
void parallel_frames(int frames, int threads, Fn&& fn) {
  threads = std::min(threads, frames);
  if (threads <= 1) {
    for (int f = 0; f < frames; ++f) fn(f);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int f = t; f < frames; f += threads) fn(f);
    });
  }
  for (auto& th : pool) th.join();
}

struct FrameTally {
  bool frame_error = false;
  bool middle_error = false;
  std::uint64_t bit_errors_all = 0;
  std::uint64_t bit_errors_mid = 0;
  ErrorProfile profile;
};

}  // namespace detail

// Deterministic Monte-Carlo sweep. Coded runs scale TW and BP by
// sqrt(Rn) so the energy per input message bit matches the uncoded run.
inline std::vector<SweepPoint> run_sweep(const SimConfig& cfg) {
  if (cfg.frames < 1) throw std::invalid_argument("frames must be >= 1");
  const std::vector<double> points = cfg.points.empty() ? default_sweep_points(cfg.kind) : cfg.points;
  const int threads = detail::resolve_threads(cfg.threads);

  const bool coded = cfg.code != SimCode::uncoded;
  StreamConfig scfg;
  double rn = 1.0;
  if (coded) {
    scfg.code = cfg.code == SimCode::ot   ? CodeFamily::ot
                : cfg.code == SimCode::op ? CodeFamily::op
                                          : CodeFamily::st;
    scfg.m = cfg.m;
    // Normalized rate of the stream as actually written (input bits per
    // written bit), so the energy-per-input-bit match is self-consistent.
    rn = static_cast<double>(stream_frame_input_bits(scfg)) /
         (3.0 * static_cast<double>(stream_frame_cols(scfg)));
  }
  const int frame_cols = coded ? stream_frame_cols(scfg) : cfg.m + 2;
  const int frame_bits = coded ? stream_frame_input_bits(scfg) : 0;

  std::vector<SweepPoint> out;
  out.reserve(points.size());
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    ChannelParams params = params_at(cfg.kind, points[pi], cfg.k);
    if (coded) {
      const double scale = std::sqrt(rn);
      params.tw *= scale;
      params.bp *= scale;
    }

    const int total_cols = cfg.frames * frame_cols;
    BitGrid written(total_cols);
    std::vector<std::uint8_t> bits;
    EncodedStream stream;

    if (coded) {
      bits.resize(static_cast<std::size_t>(cfg.frames) * static_cast<std::size_t>(frame_bits));
      detail::parallel_frames(cfg.frames, threads, [&](int f) {
        auto rng = frame_rng(cfg.seed, pi, static_cast<std::uint64_t>(f), RngPurpose::data);
        for (int b = 0; b < frame_bits; ++b)
          bits[static_cast<std::size_t>(f) * static_cast<std::size_t>(frame_bits) +
               static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(rng() & 1);
      });
      stream = encode_stream(bits, scfg);
      written = stream.to_grid();
    } else {
      detail::parallel_frames(cfg.frames, threads, [&](int f) {
        auto rng = frame_rng(cfg.seed, pi, static_cast<std::uint64_t>(f), RngPurpose::data);
        for (int c = f * frame_cols; c < (f + 1) * frame_cols; ++c)
          for (int r = 0; r < 3; ++r) written.at(r, c) = static_cast<std::uint8_t>(rng() & 1);
      });
    }

    RealGrid readback(total_cols);
    detail::parallel_frames(cfg.frames, threads, [&](int f) {
      auto rng = frame_rng(cfg.seed, pi, static_cast<std::uint64_t>(f), RngPurpose::noise);
      apply_channel_span(written, params, f * frame_cols, (f + 1) * frame_cols, rng, readback);
    });
    const BitGrid read = read_hard(readback);

    // Per-frame raw-bit tallies and profiles.
    std::vector<detail::FrameTally> tallies(static_cast<std::size_t>(cfg.frames));
    detail::parallel_frames(cfg.frames, threads, [&](int f) {
      detail::FrameTally& t = tallies[static_cast<std::size_t>(f)];
      for (int c = f * frame_cols; c < (f + 1) * frame_cols; ++c) {
        for (int r = 0; r < 3; ++r) {
          if (written.at(r, c) != read.at(r, c)) {
            ++t.bit_errors_all;
            if (r == 1) {
              ++t.bit_errors_mid;
              t.middle_error = true;
            }
          }
        }
      }
      profile_errors_span(written, read, f * frame_cols, (f + 1) * frame_cols, t.profile);
      if (!coded) t.frame_error = t.bit_errors_all > 0;
    });

    if (coded) {
      DecodeReport rep = decode_stream(read, scfg, &bits);
      for (int f = 0; f < cfg.frames; ++f)
        tallies[static_cast<std::size_t>(f)].frame_error =
            rep.frame_status[static_cast<std::size_t>(f)] != FrameStatus::ok;
    }

    SweepPoint pt;
    pt.value = points[pi];
    pt.code_id = coded ? family_name(scfg.code) : "uncoded";
    std::uint64_t fe = 0, me = 0, ba = 0, bm = 0;
    for (const auto& t : tallies) {
      fe += t.frame_error;
      me += t.middle_error;
      ba += t.bit_errors_all;
      bm += t.bit_errors_mid;
      pt.profile += t.profile;
    }
    pt.fer_all = static_cast<double>(fe) / cfg.frames;
    pt.fer_mid = static_cast<double>(me) / cfg.frames;
    pt.ber_all = static_cast<double>(ba) / (3.0 * total_cols);
    pt.ber_mid = static_cast<double>(bm) / total_cols;
    pt.written_rtis = grid_scan(written).size();
    out.push_back(std::move(pt));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reconfiguration controller: keep OP while its middle-track BER stays below
// the threshold over the guarded range; switch to OT at the first violation
// and never switch back.

struct BerPoint {
  double value = 0.0;
  double ber_mid = 0.0;
};

inline std::vector<SimCode> reconfigure(const std::vector<BerPoint>& op_sweep,
                                        const std::vector<BerPoint>& ot_sweep, double ber_threshold,
                                        double guard_lo = -1e300, double guard_hi = 1e300) {
  if (op_sweep.size() != ot_sweep.size()) throw std::invalid_argument("sweeps misaligned");
  for (std::size_t i = 0; i < op_sweep.size(); ++i)
    if (std::abs(op_sweep[i].value - ot_sweep[i].value) > 1e-9)
      throw std::invalid_argument("sweeps misaligned");
  std::vector<SimCode> schedule(op_sweep.size(), SimCode::op);
  bool switched = false;
  for (std::size_t i = 0; i < op_sweep.size(); ++i) {
    const bool guarded = op_sweep[i].value >= guard_lo && op_sweep[i].value <= guard_hi;
    if (!switched && guarded && !(op_sweep[i].ber_mid < ber_threshold)) switched = true;
    schedule[i] = switched ? SimCode::ot : SimCode::op;
  }
  return schedule;
}

// ---------------------------------------------------------------------------
// Sweep CSV (schema: sweep_value,fer_all,fer_mid,ber_all,ber_mid,pis_share,
// ipis_share,random_share,code_id).

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
  os << "sweep_value,fer_all,fer_mid,ber_all,ber_mid,pis_share,ipis_share,random_share,code_id\n";
  for (const auto& p : points) {
    os << p.value << ',' << p.fer_all << ',' << p.fer_mid << ',' << p.ber_all << ',' << p.ber_mid
       << ',' << p.profile.all.pis_share() << ',' << p.profile.all.ipis_share() << ','
       << p.profile.all.random_share() << ',' << p.code_id << '\n';
  }
}

inline std::vector<BerPoint> read_ber_csv(std::istream& is) {
  std::vector<BerPoint> out;
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty CSV");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() < 5) throw std::invalid_argument("sweep CSV needs at least 5 columns");
    out.push_back(BerPoint{std::stod(fields[0]), std::stod(fields[4])});
  }
  return out;
}

}  // namespace loco
