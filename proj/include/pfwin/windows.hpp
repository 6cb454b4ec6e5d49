#pragma once

#include "pfwin/extcalc.hpp"

#include <array>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace pfwin {

class InvalidWindow : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

using WindowTuple = std::array<int, 3>;

struct WindowSpec {
  WindowTuple m{};
  std::vector<SBundle> generators; ///< sorted by (l, m)

  [[nodiscard]] bool contains(SBundle b) const {
    return std::binary_search(generators.begin(), generators.end(), b);
  }
  [[nodiscard]] std::size_t index_of(SBundle b) const {
    auto it = std::lower_bound(generators.begin(), generators.end(), b);
    if (it == generators.end() || *it != b) throw InvalidInput(b.to_string() + " is not a generator");
    return static_cast<std::size_t>(it - generators.begin());
  }
};

inline std::string tuple_string(const WindowTuple &m) {
  return "(" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "," + std::to_string(m[2]) + ")";
}

inline WindowSpec build_window(const WindowTuple &m) {
  for (int l = 0; l < 2; ++l) {
    const auto i = static_cast<std::size_t>(l);
    if (m[i] > m[i + 1])
      throw InvalidWindow("m" + std::to_string(l) + " <= m" + std::to_string(l + 1) + " fails for " + tuple_string(m));
    if (m[i + 1] > m[i] + 1)
      throw InvalidWindow("m" + std::to_string(l + 1) + " <= m" + std::to_string(l) + " + 1 fails for " + tuple_string(m));
  }
  WindowSpec w{m, {}};
  for (int l = 0; l <= 2; ++l)
    for (int k = m[static_cast<std::size_t>(l)] - 6; k <= m[static_cast<std::size_t>(l)]; ++k) w.generators.push_back({l, k});
  return w;
}

/// W^0..W^3: successive unit drops of m0, m1, m2.
inline WindowTuple notation_window(int k) {
  switch (k) {
  case 0: return {0, 0, 0};
  case 1: return {-1, 0, 0};
  case 2: return {-1, -1, 0};
  case 3: return {-1, -1, -1};
  default: throw InvalidInput("notation windows are W^0..W^3");
  }
}

inline WindowTuple ads_window() { return {6, 7, 8}; }

/// All 441 ext profiles, indexed [i][j] = Ext(gens[i], gens[j]).
inline std::vector<std::vector<ExtProfile>> ext_grid(const std::vector<SBundle> &gens, unsigned jobs = 1) {
  const std::size_t n = gens.size();
  auto flat = parallel_map<ExtProfile>(n * n, jobs, [&](std::size_t k) { return ext_g(gens[k / n], gens[k % n]); });
  std::vector<std::vector<ExtProfile>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(flat.begin() + static_cast<long>(i * n), flat.begin() + static_cast<long>((i + 1) * n));
  return out;
}

struct ExceptionalityReport {
  std::vector<SBundle> order; ///< topological order, ties broken by (l, m)
  std::size_t edge_count = 0;
  bool endomorphisms_exceptional = true;
  bool acyclic = true;
  std::vector<SBundle> cycle; ///< witness when not acyclic
  bool lefschetz_order_valid = false;
  bool verdict = false;
};

inline bool is_exceptional_order(const std::vector<SBundle> &order) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (ext_g(order[i], order[i]).dims != std::map<int, Int>{{0, 1}}) return false;
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (!ext_g(order[j], order[i]).empty()) return false;
  }
  return true;
}

/// Block order O(m0-k), S(m1-k), Sym^2 S(m2-k) for k = 6..0.
inline std::vector<SBundle> lefschetz_order(const WindowTuple &m) {
  std::vector<SBundle> out;
  for (int k = 6; k >= 0; --k)
    for (int l = 0; l <= 2; ++l) out.push_back({l, m[static_cast<std::size_t>(l)] - k});
  return out;
}

inline ExceptionalityReport check_exceptionality(const WindowSpec &w, unsigned jobs = 1) {
  const auto &g = w.generators;
  const std::size_t n = g.size();
  const auto grid = ext_grid(g, jobs);
  ExceptionalityReport rep;
  std::vector<std::vector<std::size_t>> out_edges(n);
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (grid[i][i].dims != std::map<int, Int>{{0, 1}}) rep.endomorphisms_exceptional = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || grid[i][j].empty()) continue;
      out_edges[i].push_back(j);
      ++indeg[j];
      ++rep.edge_count;
    }
  }
  // Kahn; generators are sorted by (l, m) so the smallest index is the tie-break
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<bool> placed(n, false);
  while (!ready.empty()) {
    auto i = ready.top();
    ready.pop();
    placed[i] = true;
    rep.order.push_back(g[i]);
    for (auto j : out_edges[i])
      if (--indeg[j] == 0) ready.push(j);
  }
  if (rep.order.size() != n) {
    rep.acyclic = false;
    // walk backwards along unplaced predecessors until a vertex repeats
    std::size_t cur = 0;
    while (placed[cur]) ++cur;
    std::vector<std::size_t> path;
    std::vector<long> seen(n, -1);
    while (seen[cur] < 0) {
      seen[cur] = static_cast<long>(path.size());
      path.push_back(cur);
      for (std::size_t p = 0; p < n; ++p)
        if (!placed[p] && std::find(out_edges[p].begin(), out_edges[p].end(), cur) != out_edges[p].end()) {
          cur = p;
          break;
        }
    }
    for (auto k = static_cast<std::size_t>(seen[cur]); k < path.size(); ++k) rep.cycle.push_back(g[path[k]]);
    std::reverse(rep.cycle.begin(), rep.cycle.end());
  }
  if (rep.acyclic) {
    const auto lef = lefschetz_order(w.m);
    rep.lefschetz_order_valid = true;
    for (std::size_t i = 0; i < lef.size() && rep.lefschetz_order_valid; ++i)
      for (std::size_t j = i + 1; j < lef.size(); ++j)
        if (!grid[w.index_of(lef[j])][w.index_of(lef[i])].empty()) {
          rep.lefschetz_order_valid = false;
          break;
        }
  }
  rep.verdict = rep.acyclic && rep.endomorphisms_exceptional;
  return rep;
}

} // namespace pfwin
