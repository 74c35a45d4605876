// Command-line front end: capacity, rates, enumerate, encode, decode, scan,
// simulate, reconfigure. Exit codes: 0 success, 1 domain error, 2 usage.
#pragma once

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loco/config.hpp"
#include "loco/enumeration.hpp"
#include "loco/framing.hpp"
#include "loco/patterns.hpp"
#include "loco/spectral.hpp"
#include "loco/tdmr.hpp"

namespace loco::cli {

namespace detail {

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

inline std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream f(path, mode);
  if (!f) throw std::runtime_error("cannot open input file: " + path);
  return f;
}

inline std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  return f;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"constrained-coding toolkit for two-dimensional magnetic recording"};
  app.require_subcommand(1);

  // --- capacity ------------------------------------------------------------
  auto* cap = app.add_subcommand("capacity", "print C and Cn for a pattern set");
  std::string cap_code = "ot";
  std::string cap_patterns;
  int cap_alphabet = 8;
  int cap_tracks_coded = -1, cap_tracks_total = 3;
  cap->add_option("--code", cap_code, "ot|st|op|os|custom")->default_val("ot");
  cap->add_option("--patterns", cap_patterns, "pattern file for --code custom");
  cap->add_option("--alphabet", cap_alphabet, "alphabet size for custom sets")->check(CLI::IsMember({4, 8}));
  cap->add_option("--tracks-coded", cap_tracks_coded, "coded tracks in the 3-track group");
  cap->add_option("--tracks-total", cap_tracks_total, "tracks in the group");
  cap->callback([&] {
    PatternSet set = cap_code == "custom" ? PatternSet::load(cap_patterns, cap_alphabet)
                                          : PatternSet::builtin(builtin_from_name(cap_code));
    int coded = cap_tracks_coded > 0 ? cap_tracks_coded : (cap_code == "st" ? 2 : 3);
    Capacity c = capacity(set, coded, cap_tracks_total);
    out << "C=" << std::fixed << std::setprecision(4) << c.c << " Cn=" << c.cn << "\n";
  });

  // --- rates ---------------------------------------------------------------
  auto* rat = app.add_subcommand("rates", "finite-length rates as CSV");
  std::string rat_code = "ot";
  std::string rat_mlist;
  rat->add_option("--code", rat_code, "ot|st|op")->required();
  rat->add_option("--m-list", rat_mlist, "comma-separated codeword lengths")->required();
  rat->callback([&] {
    const CodeFamily fam = family_from_name(rat_code);
    out << "m,N,s,R,Rn\n";
    for (int m : detail::parse_int_list(rat_mlist)) {
      RateInfo r = rates(fam, m);
      out << m << ',' << code_cardinality(fam, m) << ',' << r.s << ','
          << format_fixed4(r.num, r.den) << ',' << format_fixed4(r.num_n, r.den_n) << "\n";
    }
  });

  // --- enumerate -----------------------------------------------------------
  auto* enu = app.add_subcommand("enumerate", "print the code cardinality N(m)");
  std::string enu_code = "ot";
  int enu_m = 0;
  enu->add_option("--code", enu_code, "ot|st|op")->required();
  enu->add_option("--m", enu_m, "codeword length")->required()->check(CLI::PositiveNumber);
  enu->callback([&] { out << code_cardinality(family_from_name(enu_code), enu_m) << "\n"; });

  // --- encode --------------------------------------------------------------
  auto* enc = app.add_subcommand("encode", "index or bitstream to codewords");
  std::string enc_code = "ot", enc_index, enc_in, enc_out, enc_format = "auto";
  int enc_m = 0;
  enc->add_option("--code", enc_code, "ot|st|op")->required();
  enc->add_option("--m", enc_m, "codeword length")->required()->check(CLI::PositiveNumber);
  enc->add_option("--index", enc_index, "encode a single codeword index");
  enc->add_option("--in", enc_in, "LOCO1 container of frame input bits");
  enc->add_option("--out", enc_out, "output stream file");
  enc->add_option("--format", enc_format, "symbols|grid (default: symbols, grid for st)");
  enc->callback([&] {
    const CodeFamily fam = family_from_name(enc_code);
    if (!enc_index.empty()) {
      Word cw = framing_encode_index(fam, enc_m, BigInt(enc_index));
      out << word_to_text(cw) << "\n";
      return;
    }
    if (enc_in.empty() || enc_out.empty())
      throw CLI::ValidationError("encode", "need --index or both --in and --out");
    auto f = detail::open_in(enc_in, std::ios::binary);
    Container c = read_container(f);
    if (c.config.code != fam || c.config.m != enc_m)
      throw std::runtime_error("container code/m does not match --code/--m");
    EncodedStream stream = encode_stream(c.bits, c.config);
    auto of = detail::open_out(enc_out);
    const std::string format = enc_format != "auto" ? enc_format
                               : fam == CodeFamily::st ? "grid"
                                                       : "symbols";
    if (format == "grid")
      write_grid(of, stream.to_grid());
    else if (format == "symbols")
      of << stream.symbol_text() << "\n";
    else
      throw CLI::ValidationError("encode", "--format must be symbols or grid");
    out << "frames=" << stream.frames.size() << " columns=" << stream.frames.size() * static_cast<std::size_t>(stream_frame_cols(c.config)) << "\n";
  });

  // --- decode --------------------------------------------------------------
  auto* dec = app.add_subcommand("decode", "codeword or stream back to bits");
  std::string dec_code = "ot", dec_word, dec_in, dec_out, dec_format = "auto";
  int dec_m = 0;
  dec->add_option("--code", dec_code, "ot|st|op")->required();
  dec->add_option("--m", dec_m, "codeword length")->required()->check(CLI::PositiveNumber);
  dec->add_option("--word", dec_word, "decode a single codeword (level digits)");
  dec->add_option("--in", dec_in, "received stream file");
  dec->add_option("--out", dec_out, "LOCO1 container for recovered bits");
  dec->add_option("--format", dec_format, "symbols|grid (default: symbols, grid for st)");
  dec->callback([&] {
    const CodeFamily fam = family_from_name(dec_code);
    if (!dec_word.empty()) {
      Word cw = word_from_text(dec_word, fam == CodeFamily::st ? 4 : 8);
      out << framing_rank(fam, dec_m, cw) << "\n";
      return;
    }
    if (dec_in.empty() || dec_out.empty())
      throw CLI::ValidationError("decode", "need --word or both --in and --out");
    StreamConfig scfg{fam, dec_m};
    const std::string format = dec_format != "auto" ? dec_format
                               : fam == CodeFamily::st ? "grid"
                                                       : "symbols";
    DecodeReport rep;
    if (format == "grid") {
      auto f = detail::open_in(dec_in);
      rep = decode_stream(read_grid(f), scfg);
    } else if (format == "symbols") {
      auto f = detail::open_in(dec_in);
      std::stringstream buf;
      buf << f.rdbuf();
      rep = decode_symbols(parse_symbol_text(buf.str(), scfg), nullptr, scfg);
    } else {
      throw CLI::ValidationError("decode", "--format must be symbols or grid");
    }
    auto of = detail::open_out(dec_out, std::ios::binary);
    write_container(of, scfg, rep.bits);
    out << "frames=" << rep.frames() << " frame_errors=" << rep.frame_errors()
        << " constraint_violation=" << rep.counts[1] << " index_out_of_range=" << rep.counts[2]
        << " message_mismatch=" << rep.counts[3] << " bridge_mismatch=" << rep.counts[4] << "\n";
  });

  // --- scan ----------------------------------------------------------------
  auto* scn = app.add_subcommand("scan", "report RTIS occurrences in a written grid");
  std::string scn_grid;
  scn->add_option("--grid", scn_grid, "grid text file")->required();
  scn->callback([&] {
    auto f = detail::open_in(scn_grid);
    BitGrid g = read_grid(f);
    auto hits = grid_scan(g);
    for (const auto& [col, cls] : hits) out << col << ',' << to_string(cls) << "\n";
    out << "rtis_count=" << hits.size() << "\n";
  });

  // --- simulate ------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "run a density or energy sweep");
  std::string sim_sweep = "density", sim_code = "uncoded", sim_out, sim_points, sim_config;
  SimConfig scfg_sim;
  sim->add_option("--sweep", sim_sweep, "density|energy")->check(CLI::IsMember({"density", "energy"}));
  sim->add_option("--code", sim_code, "ot|op|st|uncoded");
  sim->add_option("--frames", scfg_sim.frames, "frames per sweep point")->check(CLI::PositiveNumber);
  sim->add_option("--seed", scfg_sim.seed, "RNG seed");
  sim->add_option("--m", scfg_sim.m, "codeword length for coded runs");
  sim->add_option("--points", sim_points, "comma-separated sweep values");
  sim->add_option("--threads", scfg_sim.threads, "worker cap (also LOCO_THREADS)");
  sim->add_option("--config", sim_config, "key=value config file");
  sim->add_option("--out", sim_out, "output CSV path")->required();
  sim->callback([&] {
    if (!sim_config.empty()) apply_config(scfg_sim, load_config(sim_config));
    scfg_sim.kind = sim_sweep == "density" ? SweepKind::density : SweepKind::energy;
    scfg_sim.code = sim_code_from_name(sim_code);
    if (!sim_points.empty()) scfg_sim.points = parse_double_list(sim_points);
    auto points = run_sweep(scfg_sim);
    auto of = detail::open_out(sim_out);
    write_sweep_csv(of, points);
    out << "points=" << points.size() << " frames_per_point=" << scfg_sim.frames << "\n";
  });

  // --- reconfigure ---------------------------------------------------------
  auto* rec = app.add_subcommand("reconfigure", "derive an OP/OT code schedule from sweeps");
  std::string rec_op, rec_ot, rec_out;
  double rec_threshold = 1e-3, rec_lo = -1e300, rec_hi = 1e300;
  rec->add_option("--threshold", rec_threshold, "middle-track BER threshold")->required();
  rec->add_option("--op", rec_op, "OP sweep CSV")->required();
  rec->add_option("--ot", rec_ot, "OT sweep CSV")->required();
  rec->add_option("--guard-lo", rec_lo, "guarded range lower bound");
  rec->add_option("--guard-hi", rec_hi, "guarded range upper bound");
  rec->add_option("--out", rec_out, "schedule CSV")->required();
  rec->callback([&] {
    auto fop = detail::open_in(rec_op);
    auto fot = detail::open_in(rec_ot);
    auto op_points = read_ber_csv(fop);
    auto ot_points = read_ber_csv(fot);
    auto schedule = reconfigure(op_points, ot_points, rec_threshold, rec_lo, rec_hi);
    auto of = detail::open_out(rec_out);
    of << "sweep_value,code_id\n";
    for (std::size_t i = 0; i < schedule.size(); ++i)
      of << op_points[i].value << ',' << sim_code_name(schedule[i]) << "\n";
    out << "points=" << schedule.size() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    const auto parsed = app.get_subcommands();
    if (parsed.empty())
      err << app.help();
    else
      for (const CLI::App* sub : parsed) err << sub->help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace loco::cli
