// Finite-state transition diagram construction for a pattern set, dominant
// eigenvalue by power iteration, and (normalized) capacity.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "loco/patterns.hpp"

namespace loco {

// States are the allowed length-(L-1) contexts merged by forward equivalence:
// two contexts merge when they admit identical allowed continuations, so a
// walk's labels generate exactly the constraint-satisfying sequences and the
// per-state edge count is preserved under merging.
struct Fstd {
  std::vector<Word> state_contexts;               // smallest member context per state
  std::vector<std::vector<long>> adjacency;       // (i,j) = number of symbols i -> j
  std::vector<std::vector<Word>> edge_labels;     // symbols on each merged edge

  int states() const { return static_cast<int>(adjacency.size()); }
  std::vector<long> row_sums() const {
    std::vector<long> sums;
    for (const auto& row : adjacency)
      sums.push_back(std::accumulate(row.begin(), row.end(), 0L));
    return sums;
  }
};

inline Fstd build_fstd(const PatternSet& set) {
  const int q = set.alphabet();
  const int ctx_len = set.max_length() - 1;

  // Enumerate allowed contexts in lexicographic order.
  std::vector<Word> contexts;
  Word cur(static_cast<std::size_t>(ctx_len), 0);
  if (ctx_len == 0) {
    contexts.push_back({});
  } else {
    while (true) {
      if (set.satisfies(cur)) contexts.push_back(cur);
      int pos = ctx_len - 1;
      while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == q - 1) cur[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
      ++cur[static_cast<std::size_t>(pos)];
    }
  }

  std::map<Word, int> id;
  for (std::size_t i = 0; i < contexts.size(); ++i) id[contexts[i]] = static_cast<int>(i);

  auto step = [&](const Word& ctx, int z) -> int {
    Word w = ctx;
    w.push_back(static_cast<std::uint8_t>(z));
    if (set.violation_at_end(w)) return -1;
    if (ctx_len == 0) return 0;
    Word nxt(w.end() - ctx_len, w.end());
    auto it = id.find(nxt);
    return it == id.end() ? -1 : it->second;
  };

  std::vector<std::vector<int>> next(contexts.size(), std::vector<int>(static_cast<std::size_t>(q), -1));
  for (std::size_t s = 0; s < contexts.size(); ++s)
    for (int z = 0; z < q; ++z) next[s][static_cast<std::size_t>(z)] = step(contexts[s], z);

  // Drop states that cannot appear in a bi-infinite walk.
  std::vector<bool> alive(contexts.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<bool> has_in(contexts.size(), false);
    for (std::size_t s = 0; s < contexts.size(); ++s) {
      if (!alive[s]) continue;
      bool has_out = false;
      for (int z = 0; z < q; ++z) {
        int t = next[s][static_cast<std::size_t>(z)];
        if (t >= 0 && alive[static_cast<std::size_t>(t)]) {
          has_out = true;
          has_in[static_cast<std::size_t>(t)] = true;
        }
      }
      if (!has_out) {
        alive[s] = false;
        changed = true;
      }
    }
    for (std::size_t s = 0; s < contexts.size(); ++s)
      if (alive[s] && !has_in[s]) {
        alive[s] = false;
        changed = true;
      }
  }
  if (std::none_of(alive.begin(), alive.end(), [](bool a) { return a; }))
    throw std::invalid_argument("pattern set admits no bi-infinite sequence");

  // Moore refinement on the live subgraph until classes are stable.
  std::vector<int> cls(contexts.size(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::vector<int>, int> sig_to_class;
    std::vector<int> fresh(contexts.size(), -1);
    for (std::size_t s = 0; s < contexts.size(); ++s) {
      if (!alive[s]) continue;
      std::vector<int> sig{cls[s]};
      for (int z = 0; z < q; ++z) {
        int t = next[s][static_cast<std::size_t>(z)];
        sig.push_back(t >= 0 && alive[static_cast<std::size_t>(t)] ? cls[static_cast<std::size_t>(t)] : -1);
      }
      auto [it, inserted] = sig_to_class.emplace(sig, static_cast<int>(sig_to_class.size()));
      fresh[s] = it->second;
    }
    for (std::size_t s = 0; s < contexts.size(); ++s) {
      if (alive[s] && fresh[s] != cls[s]) {
        cls[s] = fresh[s];
        changed = true;
      }
    }
  }

  // Order classes by their smallest member context.
  std::map<int, Word> representative;
  for (std::size_t s = 0; s < contexts.size(); ++s) {
    if (!alive[s]) continue;
    auto it = representative.find(cls[s]);
    if (it == representative.end() || contexts[s] < it->second) representative[cls[s]] = contexts[s];
  }
  std::vector<std::pair<Word, int>> ordered;
  for (const auto& [c, rep] : representative) ordered.emplace_back(rep, c);
  std::sort(ordered.begin(), ordered.end());
  std::map<int, int> renumber;
  for (std::size_t i = 0; i < ordered.size(); ++i) renumber[ordered[i].second] = static_cast<int>(i);

  Fstd f;
  const int n = static_cast<int>(ordered.size());
  f.adjacency.assign(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
  f.edge_labels.assign(static_cast<std::size_t>(n), std::vector<Word>(static_cast<std::size_t>(n)));
  for (const auto& [rep, old_cls] : ordered) {
    f.state_contexts.push_back(rep);
    const int i = renumber[old_cls];
    const std::size_t s = static_cast<std::size_t>(id[rep]);
    for (int z = 0; z < q; ++z) {
      int t = next[s][static_cast<std::size_t>(z)];
      if (t < 0 || !alive[static_cast<std::size_t>(t)]) continue;
      const int j = renumber[cls[static_cast<std::size_t>(t)]];
      ++f.adjacency[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      f.edge_labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].push_back(static_cast<std::uint8_t>(z));
    }
  }
  return f;
}

// Largest eigenvalue of a square non-negative matrix by power iteration with
// a deterministic all-ones start vector.
inline double dominant_eigenvalue(const std::vector<std::vector<long>>& a, double tol = 1e-12,
                                  long max_iter = 1'000'000) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("empty matrix");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("matrix must be square");

  std::vector<double> v(n, 1.0), w(n, 0.0);
  double lambda = 0.0;
  for (long it = 0; it < max_iter; ++it) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += static_cast<double>(a[i][j]) * v[j];
      w[i] = acc;
      norm += acc;
    }
    if (norm == 0.0) return 0.0;  // nilpotent
    const double estimate = norm;  // v is L1-normalized to 1
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    if (it > 0 && std::abs(estimate - lambda) <= tol * std::max(1.0, std::abs(estimate)))
      return estimate;
    lambda = estimate;
  }
  throw std::runtime_error("power iteration did not converge");
}

struct Capacity {
  double c;   // bits per coded symbol
  double cn;  // per written bit across the track group
};

// C = log2(lambda_max); the normalized value spreads C over the group's
// bits per column and credits each uncoded track with one free bit.
inline Capacity capacity(const PatternSet& set, int tracks_coded, int tracks_total) {
  if (tracks_coded > tracks_total || tracks_coded < 1)
    throw std::invalid_argument("tracks_coded must be in [1, tracks_total]");
  Fstd f = build_fstd(set);
  const double c = std::log2(dominant_eigenvalue(f.adjacency));
  return Capacity{c, (c + static_cast<double>(tracks_total - tracks_coded)) / static_cast<double>(tracks_total)};
}

}  // namespace loco
