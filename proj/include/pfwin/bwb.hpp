#pragma once

// Borel-Weil-Bott on Grassmannians G(k,n) of k-planes.
//
// Convention (the only place it is fixed): a homogeneous bundle is
// Sigma^alpha S^v (x) Sigma^beta Q^v with S the tautological subbundle and
// Q the quotient. Its cohomology is read off the concatenated weight
// (alpha | beta) by the dotted Weyl action with rho = (n-1, ..., 0):
// a repeated entry means no cohomology; otherwise sorting into strictly
// decreasing order takes `inversions` transpositions and
// H^{inversions} = Sigma^{sorted - rho} V^v.
//
// S_{l,m} = Sym^l S (m) becomes alpha = (m, m - l), beta = 0; this choice
// is pinned by the calibration anchors in the tests.

#include "pfwin/weights.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

namespace pfwin {

struct HomogeneousBundle {
  int k = 2;
  int n = 7;
  std::vector<int> alpha; ///< S-block, k entries
  std::vector<int> beta;  ///< Q-block, n-k entries

  void validate() const {
    if (k < 1 || k >= n) throw InvalidInput("need 0 < k < n for G(k,n)");
    if (alpha.size() != static_cast<std::size_t>(k) ||
        beta.size() != static_cast<std::size_t>(n - k))
      throw InvalidInput("weight blocks do not match G(k,n)");
    for (const auto *blk : {&alpha, &beta})
      for (std::size_t i = 1; i < blk->size(); ++i)
        if ((*blk)[i] > (*blk)[i - 1])
          throw InvalidInput("weight block is not weakly decreasing");
  }

  [[nodiscard]] std::vector<int> weight() const {
    std::vector<int> w(alpha);
    w.insert(w.end(), beta.begin(), beta.end());
    return w;
  }
};

/// GL(n) irrep, recorded as a partition plus a power of det.
struct GlIrrep {
  Partition shape;
  int det_twist = 0;
  Int dim;

  bool operator==(const GlIrrep &) const = default;
};

struct CohomologyProfile {
  std::map<int, GlIrrep> terms; ///< degree -> irrep

  [[nodiscard]] bool empty() const { return terms.empty(); }
  [[nodiscard]] Int dim(int degree) const {
    auto it = terms.find(degree);
    return it == terms.end() ? Int(0) : it->second.dim;
  }
  [[nodiscard]] Int euler_characteristic() const {
    Int chi = 0;
    for (const auto &[d, r] : terms) chi += (d % 2 ? -r.dim : r.dim);
    return chi;
  }
  bool operator==(const CohomologyProfile &) const = default;
};

namespace detail {

struct BwbValue {
  int degree;
  std::vector<int> highest_weight;
};

class BwbMemo {
public:
  static BwbMemo &instance() {
    static BwbMemo memo;
    return memo;
  }

  template <class F>
  std::optional<BwbValue> lookup(const std::vector<int> &weight, F &&compute) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(weight); it != table_.end()) return it->second;
    }
    auto value = compute();
    std::unique_lock lock(mutex_);
    table_.emplace(weight, value);
    return value;
  }

  [[nodiscard]] std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

private:
  mutable std::shared_mutex mutex_;
  std::map<std::vector<int>, std::optional<BwbValue>> table_;
};

inline std::optional<BwbValue> dotted_action(const std::vector<int> &weight) {
  const int n = static_cast<int>(weight.size());
  std::vector<int> shifted(weight.size());
  for (int i = 0; i < n; ++i) shifted[static_cast<std::size_t>(i)] = weight[static_cast<std::size_t>(i)] + (n - 1 - i);
  int inversions = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (shifted[static_cast<std::size_t>(i)] == shifted[static_cast<std::size_t>(j)]) return std::nullopt;
      if (shifted[static_cast<std::size_t>(i)] < shifted[static_cast<std::size_t>(j)]) ++inversions;
    }
  std::sort(shifted.begin(), shifted.end(), std::greater<>());
  for (int i = 0; i < n; ++i) shifted[static_cast<std::size_t>(i)] -= n - 1 - i;
  return BwbValue{inversions, std::move(shifted)};
}

} // namespace detail

/// The weight is memoized; `k` only matters for validation since the
/// answer depends on the concatenated weight alone.
inline CohomologyProfile bwb_cohomology(const HomogeneousBundle &b) {
  b.validate();
  const auto weight = b.weight();
  auto value = detail::BwbMemo::instance().lookup(
      weight, [&] { return detail::dotted_action(weight); });
  CohomologyProfile out;
  if (!value) return out;
  const int twist = value->highest_weight.back();
  std::vector<int> parts(value->highest_weight);
  for (int &p : parts) p -= twist;
  out.terms.emplace(value->degree,
                    GlIrrep{Partition(parts), twist, weyl_dim_weight(value->highest_weight)});
  return out;
}

inline HomogeneousBundle grassmannian_weight(SBundle e, int n = 7) {
  return {2, n, {e.m, e.m - e.l}, std::vector<int>(static_cast<std::size_t>(n - 2), 0)};
}

/// H^*(G(2,n), Sym^l S (m)).
inline CohomologyProfile cohomology_of(SBundle e, int n = 7) {
  if (e.l < 0) throw InvalidInput("negative symmetric power");
  return bwb_cohomology(grassmannian_weight(e, n));
}

/// H^*(P^6, O(d)), computed as G(1,7) with S = O(-1).
inline CohomologyProfile p6_line_cohomology(int d) {
  return bwb_cohomology({1, 7, {d}, std::vector<int>(6, 0)});
}

} // namespace pfwin
