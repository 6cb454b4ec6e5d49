#pragma once

// GL-weight calculus for the rank-2 tautological bundle S.
//
// Everything is normalized to the form S_{l,m} = Sym^l S (m) with
// O(1) = det S^v, so det S = O(-1) and S^v = S(1).

#include "pfwin/core.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace pfwin {

struct SBundle {
  int l = 0; ///< symmetric power
  int m = 0; ///< twist by O(m)

  constexpr auto operator<=>(const SBundle &) const = default;

  [[nodiscard]] SBundle twisted(int k) const { return {l, m + k}; }
  [[nodiscard]] int rank() const { return l + 1; }
  [[nodiscard]] std::string to_string() const {
    return "S_{" + std::to_string(l) + "," + std::to_string(m) + "}";
  }
};

inline SBundle make_sbundle(int l, int m) {
  if (l < 0)
    throw InvalidInput("negative symmetric power " + std::to_string(l));
  return {l, m};
}

// Direct sum with positive multiplicities; zero entries are never stored.
class VirtualBundle {
public:
  void add(SBundle b, const Int &mult) {
    if (mult == 0) return;
    auto [it, fresh] = terms_.try_emplace(b, mult);
    if (!fresh) {
      it->second += mult;
      if (it->second == 0) terms_.erase(it);
    }
  }

  [[nodiscard]] const std::map<SBundle, Int> &terms() const & { return terms_; }
  // by value on temporaries, so range-for over f().terms() stays valid
  [[nodiscard]] std::map<SBundle, Int> terms() && { return std::move(terms_); }
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] Int rank() const {
    Int r = 0;
    for (const auto &[b, k] : terms_) r += k * b.rank();
    return r;
  }

  [[nodiscard]] Int multiplicity(SBundle b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Int(0) : it->second;
  }

  bool operator==(const VirtualBundle &) const = default;

private:
  std::map<SBundle, Int> terms_;
};

// Weakly decreasing, non-negative, trailing zeros trimmed.
class Partition {
public:
  Partition() = default;
  Partition(std::initializer_list<int> parts)
      : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0)
        throw InvalidInput("partition has a negative part");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw InvalidInput("partition is not weakly decreasing");
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }

  [[nodiscard]] std::size_t length() const { return parts_.size(); }
  [[nodiscard]] int operator[](std::size_t i) const {
    return i < parts_.size() ? parts_[i] : 0;
  }
  [[nodiscard]] int size() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }
  [[nodiscard]] const std::vector<int> &parts() const { return parts_; }

  auto operator<=>(const Partition &) const = default;

  [[nodiscard]] std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i)
      s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

private:
  std::vector<int> parts_;
};

/// Dimension of the GL(n) irrep with highest weight `weight` (weakly
/// decreasing, entries of any sign).
inline Int weyl_dim_weight(std::span<const int> weight) {
  const std::size_t n = weight.size();
  Int num = 1, den = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      num *= static_cast<long>(weight[i]) - weight[j] + static_cast<long>(j - i);
      den *= static_cast<long>(j - i);
    }
  return num / den;
}

inline Int weyl_dim(const Partition &lambda, int n) {
  if (n < 1) throw InvalidInput("GL(n) rank must be positive");
  if (lambda.length() > static_cast<std::size_t>(n))
    throw InvalidInput("partition " + lambda.to_string() + " has more than " +
                       std::to_string(n) + " parts");
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)];
  return weyl_dim_weight(w);
}

/// Sym^a S (x) Sym^b S = sum_t Sym^{a+b-2t} S (-t), t = 0..min(a,b).
inline VirtualBundle cg_decompose(int a, int b) {
  if (a < 0 || b < 0)
    throw InvalidInput("negative symmetric degree in Clebsch-Gordan");
  VirtualBundle out;
  for (int t = 0; t <= std::min(a, b); ++t) out.add({a + b - 2 * t, -t}, 1);
  return out;
}

/// Sym^l S^v (m) = Sym^l S (m + l).
inline SBundle dual_to_s_form(int l, int m) {
  if (l < 0) throw InvalidInput("negative symmetric degree");
  return {l, m + l};
}

/// Dual bundle in S-form: (Sym^l S(m))^v = Sym^l S^v(-m) = S_{l, l-m}.
inline SBundle dual_of(SBundle b) { return dual_to_s_form(b.l, -b.m); }

/// Sigma^lambda S for a two-row partition, in S-form.
inline SBundle schur_of_s(const Partition &lambda) {
  if (lambda.length() > 2)
    throw InvalidInput("Schur functor of a rank-2 bundle needs <= 2 rows");
  return {lambda[0] - lambda[1], -lambda[1]};
}

struct CauchyTerm {
  Partition shape;
  Int multiplicity; ///< dim Sigma^shape C^d
  [[nodiscard]] SBundle bundle() const { return schur_of_s(shape); }
};

/// Sym^n (S (x) C^d) = sum over two-row lambda |- n of Sigma^lambda S (x) Sigma^lambda C^d.
inline std::vector<CauchyTerm> cauchy_sym(int n, int d) {
  if (n < 0) throw InvalidInput("negative symmetric degree");
  if (d < 1) throw InvalidInput("auxiliary dimension must be positive");
  std::vector<CauchyTerm> out;
  for (int second = n / 2; second >= 0; --second) {
    Partition shape{n - second, second};
    if (shape.length() > static_cast<std::size_t>(d)) continue;
    out.push_back({shape, weyl_dim(shape, d)});
  }
  std::sort(out.begin(), out.end(),
            [](const CauchyTerm &a, const CauchyTerm &b) { return a.shape > b.shape; });
  return out;
}

/// Terms of the Koszul complex of O(twist)^{rank}: entry i is O(i*twist)^{C(rank,i)}.
inline std::vector<VirtualBundle> koszul_terms(int rank, int twist_per_step) {
  if (rank < 1) throw InvalidInput("Koszul rank must be positive");
  std::vector<VirtualBundle> out(static_cast<std::size_t>(rank) + 1);
  for (int i = 0; i <= rank; ++i)
    out[static_cast<std::size_t>(i)].add({0, i * twist_per_step}, binomial(rank, i));
  return out;
}

} // namespace pfwin
