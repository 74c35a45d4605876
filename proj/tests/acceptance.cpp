// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loco/enumeration.hpp"
#include "loco/framing.hpp"
#include "loco/otloco.hpp"
#include "loco/rank.hpp"
#include "loco/spectral.hpp"
#include "loco/stloco.hpp"
#include "loco/tdmr.hpp"
#include "test_helpers.hpp"

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int g_failures = 0;

void criterion(int number, const std::string& title, double time_limit_s,
               const std::function<void(Check&)>& body) {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.ok = false;
    check.detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.require(elapsed < time_limit_s, "time limit exceeded");
  std::printf("criterion %2d: %s - %s (%.2f s)%s%s\n", number, check.ok ? "PASS" : "FAIL",
              title.c_str(), elapsed, check.detail.empty() ? "" : " :: ",
              check.detail.c_str());
  std::fflush(stdout);
  if (!check.ok) ++g_failures;
}

std::string fmt(const loco::RateInfo& r) {
  return loco::format_fixed4(r.num, r.den) + "/" + loco::format_fixed4(r.num_n, r.den_n) + "/" +
         std::to_string(r.s);
}

}  // namespace

int main() {
  using namespace loco;

  criterion(1, "cardinalities N8(0..2) and N4(0..5)", 1.0, [](Check& c) {
    c.require(n8(0) == 2 && n8(1) == 8 && n8(2) == 50, "N8 base values");
    const long expect4[] = {2, 4, 10, 24, 58, 140};
    for (int m = 0; m <= 5; ++m) c.require(n4(m) == expect4[m], "N4(" + std::to_string(m) + ")");
  });

  criterion(2, "Table III rates and adder sizes", 1.0, [](Check& c) {
    const int ms[] = {10, 14, 21, 30, 50, 81};
    const char* want[] = {"2.4167/0.8056/26", "2.4375/0.8125/36", "2.4783/0.8261/54",
                          "2.5000/0.8333/77", "2.5192/0.8397/128", "2.5301/0.8434/207"};
    for (int i = 0; i < 6; ++i)
      c.require(fmt(rates(CodeFamily::ot, ms[i])) == want[i], "m=" + std::to_string(ms[i]));
  });

  criterion(3, "Table IV normalized rates and adder sizes", 1.0, [](Check& c) {
    const int ms[] = {5, 9, 12, 23, 34, 49};
    const char* want_rn[] = {"0.7083", "0.7222", "0.7333", "0.7436", "0.7477", "0.7500"};
    const int want_s[] = {7, 12, 16, 30, 44, 63};
    for (int i = 0; i < 6; ++i) {
      RateInfo r = rates(CodeFamily::st, ms[i]);
      c.require(format_fixed4(r.num_n, r.den_n) == want_rn[i] && r.s == want_s[i],
                "m=" + std::to_string(ms[i]));
    }
  });

  criterion(4, "capacities and characteristic-polynomial factors", 1.0, [](Check& c) {
    Capacity ot = capacity(PatternSet::builtin(BuiltinSet::ot8), 3, 3);
    c.require(std::abs(ot.c - 2.5494) < 1e-4, "C_OT");
    c.require(std::abs(ot.cn - 0.8498) < 1e-4, "Cn_OT");
    Capacity st = capacity(PatternSet::builtin(BuiltinSet::st4), 2, 3);
    c.require(std::abs(st.c - 1.2715) < 1e-4, "C_ST");
    c.require(std::abs(st.cn - 0.7572) < 1e-4, "Cn_ST");
    Capacity op = capacity(PatternSet::builtin(BuiltinSet::op8), 3, 3);
    c.require(std::abs(op.cn - 0.9710) < 1e-4, "Cn_OP");
    const double l1 = dominant_eigenvalue(build_fstd(PatternSet::builtin(BuiltinSet::ot8)).adjacency);
    c.require(std::abs(l1 * l1 - 5 * l1 - 5) < 1e-9, "F1 factor");
    const double l2 = dominant_eigenvalue(build_fstd(PatternSet::builtin(BuiltinSet::st4)).adjacency);
    c.require(std::abs(l2 * l2 - 2 * l2 - 1) < 1e-9, "F2 factor");
  });

  criterion(5, "top GF(4) codeword of length 5 indexes to 139 and back", 1.0, [](Check& c) {
    StCodec codec(5);
    Word top(5, 3);
    c.require(codec.index_of(top) == 139, "st_index");
    c.require(codec.encode_index(139) == top, "st_encode");
  });

  criterion(6, "closed-form rules match the DFA rank oracle", 60.0, [](Check& c) {
    PatternSet ot_set = PatternSet::builtin(BuiltinSet::ot8);
    CountingDfa ot_oracle(ot_set);
    for (int m = 1; m <= 5; ++m) {
      OtCodec codec(m);
      auto words = testing::all_valid_words(ot_set, m);
      if (m == 5) c.require(words.size() == 9950, "9950 OT words at m=5");
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (codec.index_of(words[i]) != i || ot_oracle.rank(words[i]) != i) {
          c.require(false, "OT mismatch at m=" + std::to_string(m));
          return;
        }
      }
    }
    PatternSet st_set = PatternSet::builtin(BuiltinSet::st4);
    CountingDfa st_oracle(st_set);
    for (int m = 1; m <= 8; ++m) {
      StCodec codec(m);
      auto words = testing::all_valid_words(st_set, m);
      if (m == 8) c.require(words.size() == 1970, "1970 ST words at m=8");
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (codec.index_of(words[i]) != i || st_oracle.rank(words[i]) != i) {
          c.require(false, "ST mismatch at m=" + std::to_string(m));
          return;
        }
      }
    }
    std::mt19937_64 rng(2026);
    OtCodec ot23(23);
    for (int t = 0; t < 100000; ++t) {
      Word w = testing::random_valid_word(ot_set, 23, rng);
      if (ot23.index_of(w) != ot_oracle.rank(w)) {
        c.require(false, "OT random mismatch at m=23");
        return;
      }
    }
    StCodec st30(30);
    for (int t = 0; t < 100000; ++t) {
      Word w = testing::random_valid_word(st_set, 30, rng);
      if (st30.index_of(w) != st_oracle.rank(w)) {
        c.require(false, "ST random mismatch at m=30");
        return;
      }
    }
  });

  criterion(7, "bridged stream integrity and noiseless recovery", 60.0, [](Check& c) {
    std::mt19937_64 rng(99);
    struct Case {
      CodeFamily code;
      int m;
      BuiltinSet set;
    };
    for (const Case& cs : {Case{CodeFamily::ot, 23, BuiltinSet::ot8},
                           Case{CodeFamily::st, 14, BuiltinSet::st4}}) {
      StreamConfig cfg{cs.code, cs.m};
      const std::size_t nbits =
          static_cast<std::size_t>(stream_frame_input_bits(cfg)) * 10000;
      std::vector<std::uint8_t> bits(nbits);
      for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
      EncodedStream s = encode_stream(bits, cfg);
      Word symbols = s.symbols();
      PatternSet set = PatternSet::builtin(cs.set);
      c.require(set.find_forbidden(symbols).empty(), "forbidden pattern in stream");
      c.require(grid_scan(s.to_grid()).empty(), "RTIS in written grid");
      c.require(testing::max_identical_run(symbols) <= static_cast<std::size_t>(cs.m + 4),
                "run longer than m+4");
      DecodeReport rep = decode_stream(s.to_grid(), cfg, &bits);
      c.require(rep.ok() && rep.bits == bits, "recovery not bit-exact");
    }
  });

  criterion(8, "message lengths of the coded instances", 1.0, [](Check& c) {
    c.require(message_length(CodeFamily::ot, 23) == 59, "OT m=23");
    c.require(message_length(CodeFamily::ot, 14) == 36, "OT m=14");
    c.require(message_length(CodeFamily::op, 23) == 67, "OP m=23");
    c.require(message_length(CodeFamily::op, 14) == 40, "OP m=14");
  });

  criterion(9, "surrogate channel: coded vs uncoded ordering and profile shape", 600.0,
            [](Check& c) {
              SimConfig uncoded;
              uncoded.kind = SweepKind::density;
              uncoded.code = SimCode::uncoded;
              uncoded.frames = 10000;
              uncoded.seed = 20260809;
              uncoded.m = 23;
              auto u = run_sweep(uncoded);

              SimConfig coded = uncoded;
              coded.code = SimCode::ot;
              auto k = run_sweep(coded);

              for (std::size_t i = 0; i < u.size(); ++i) {
                std::ostringstream what;
                what << "FER ordering at D=" << u[i].value << " (coded " << k[i].fer_all
                     << " vs uncoded " << u[i].fer_all << ")";
                c.require(k[i].fer_all <= u[i].fer_all, what.str());
                c.require(k[i].written_rtis == 0, "coded written RTIS at point");
              }
              c.require(u.front().profile.all.pis_share() > u.front().profile.all.ipis_share(),
                        "PIS share not dominant at lowest density");
              c.require(u.back().profile.all.ipis_share() >= u.back().profile.all.pis_share(),
                        "IPIS share not dominant at highest density");
            });

  criterion(10, "reconfiguration switches at the first threshold violation", 1.0, [](Check& c) {
    std::vector<BerPoint> op, ot;
    for (int i = 0; i < 9; ++i) {
      op.push_back({0.8 + 0.1 * i, i < 5 ? 1e-4 : 2e-3});
      ot.push_back({0.8 + 0.1 * i, 1e-6});
    }
    auto schedule = reconfigure(op, ot, 1e-3);
    for (int i = 0; i < 9; ++i)
      c.require(schedule[static_cast<std::size_t>(i)] == (i < 5 ? SimCode::op : SimCode::ot),
                "switch point");
    auto all_op = reconfigure(op, ot, 1e-2);
    c.require(all_op.back() == SimCode::op, "all-OP schedule");
    auto all_ot = reconfigure(op, ot, 0.0);
    c.require(all_ot.front() == SimCode::ot, "all-OT schedule");
  });

  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
