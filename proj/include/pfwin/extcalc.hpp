#pragma once

// Ext engines for S-bundles on G(2,n) and on the two GLSM phases.
//
// X_G side: Hom over the p-directions contributes Sym^n of O(1)^7, so
// Ext_{X_G}(E,F) = sum_n Ext_G(E, F(n))^{C(n+6,6)}.
// X_P side: expand Sym^n(S (x) C^7) by Cauchy, take SL(2)-invariants, and
// push each surviving line bundle down to P^6.

#include "pfwin/bwb.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pfwin {

struct ExtProfile {
  std::map<int, Int> dims; ///< degree -> dimension, zeros never stored

  void add(int degree, const Int &d) {
    if (d == 0) return;
    dims[degree] += d;
  }
  [[nodiscard]] Int dim(int degree) const {
    auto it = dims.find(degree);
    return it == dims.end() ? Int(0) : it->second;
  }
  [[nodiscard]] bool empty() const { return dims.empty(); }
  [[nodiscard]] bool higher_vanishes() const {
    return std::all_of(dims.begin(), dims.end(), [](const auto &kv) { return kv.first == 0; });
  }
  [[nodiscard]] Int euler() const {
    Int chi = 0;
    for (const auto &[d, v] : dims) chi += (d % 2 ? -v : v);
    return chi;
  }
  bool operator==(const ExtProfile &) const = default;
};

/// Sheaf Hom(e, f) = e^v (x) f, decomposed into S-bundles.
inline VirtualBundle hom_bundle(SBundle e, SBundle f) {
  const SBundle ed = dual_of(e);
  VirtualBundle out;
  for (const auto &[b, k] : cg_decompose(ed.l, f.l).terms()) out.add(b.twisted(ed.m + f.m), k);
  return out;
}

inline ExtProfile ext_g(SBundle e, SBundle f, int n = 7) {
  ExtProfile out;
  for (const auto &[b, k] : hom_bundle(e, f).terms())
    for (const auto &[deg, irrep] : cohomology_of(b, n).terms) out.add(deg, k * irrep.dim);
  return out;
}

inline Int chi_g(SBundle e, SBundle f, int n = 7) { return ext_g(e, f, n).euler(); }

struct ExtWitness {
  long n = 0;       ///< grading / twist at which the higher Ext appears
  SBundle summand;  ///< offending summand (X_G) or P^6 line bundle O(d) as {0,d} (X_P)
  int degree = 0;
  Int dim;
};

struct VanishingCertificate {
  bool verdict = true;
  long range_lo = 0, range_hi = 0; ///< scanned interval (inclusive)
  long bound = 0;                  ///< justification bound; lies in the scanned range
  std::optional<ExtWitness> witness;
};

/// Least n >= 0 past which every summand of Hom(e, f(n)) is dominant, so
/// only H^0 can occur. Dominance of Sym^a S(c) under the fixed convention
/// is c >= a, independent of the ambient dimension.
inline long xg_bound(SBundle e, SBundle f) {
  long bound = 0;
  for (const auto &[b, k] : hom_bundle(e, f).terms())
    bound = std::max<long>(bound, static_cast<long>(b.l) - b.m);
  return bound;
}

inline VanishingCertificate higher_ext_vanishes_xg(SBundle e, SBundle f, long extra = 0) {
  VanishingCertificate cert;
  cert.bound = xg_bound(e, f);
  cert.range_hi = cert.bound + extra;
  for (const auto &[b, k] : hom_bundle(e, f).terms()) {
    // certificate sanity: past the bound the weight must be dominant
    const SBundle tail = b.twisted(static_cast<int>(cert.bound));
    if (tail.m < tail.l) throw InconsistencyError("X_G bound does not reach the dominant range");
  }
  for (long n = 0; n <= cert.range_hi; ++n) {
    for (const auto &[b, k] : hom_bundle(e, f.twisted(static_cast<int>(n))).terms()) {
      for (const auto &[deg, irrep] : cohomology_of(b).terms) {
        if (deg == 0) continue;
        cert.verdict = false;
        cert.witness = ExtWitness{n, b, deg, k * irrep.dim * binomial(n + 6, 6)};
        return cert;
      }
    }
  }
  return cert;
}

// Direction of the det-power -> O_{P^6} twist translation. A contribution
// with det-index n' pushes down to RGamma(P^6, O(sign * n')).
inline constexpr int kPfaffianTwistSign = -1;

struct Conventions {
  int pfaffian_twist_sign = kPfaffianTwistSign;
};

struct InvariantContribution {
  Partition lambda; ///< Cauchy shape (two rows)
  int t = 0;        ///< Clebsch-Gordan index
  long n_prime = 0; ///< det-index surviving the invariant extraction
  Int multiplicity; ///< dim Sigma^lambda C^7

  [[nodiscard]] long p6_twist(const Conventions &c = {}) const { return c.pfaffian_twist_sign * n_prime; }
};

namespace detail {

// Contributions with s = lambda_2 + t fixed. For Hom(S_{l,m}, S_{l',m'}),
// lambda_1 - lambda_2 = l - l' + 2t, and t >= max(0, l'-l) keeps the CG
// index inside its range; the invariant is then det^{-l} which leaves
// n' = m' - m - s.
inline void contributions_at(SBundle e, SBundle f, long s, std::vector<InvariantContribution> &out) {
  const int tmin = std::max(0, f.l - e.l);
  for (int t = tmin; t <= f.l; ++t) {
    const long lam2 = s - t;
    if (lam2 < 0) continue;
    const long lam1 = lam2 + e.l - f.l + 2 * t;
    Partition lambda{static_cast<int>(lam1), static_cast<int>(lam2)};
    out.push_back({lambda, t, static_cast<long>(f.m) - e.m - s, weyl_dim(lambda, 7)});
  }
}

} // namespace detail

/// All invariant contributions with n' >= n_prime_min, sorted by n' then shape.
/// The H^0 part (n' <= 0 under the default sign) is infinite, hence the cutoff.
inline std::vector<InvariantContribution> pfaffian_contributions(SBundle e, SBundle f, long n_prime_min) {
  std::vector<InvariantContribution> out;
  const long smax = static_cast<long>(f.m) - e.m - n_prime_min;
  for (long s = 0; s <= smax; ++s) detail::contributions_at(e, f, s, out);
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return a.n_prime != b.n_prime ? a.n_prime < b.n_prime : a.lambda > b.lambda;
  });
  return out;
}

/// Exact: H^6(P^6, O(d)) != 0 iff d <= -7, which pins a finite s-range
/// under the default sign; under the flipped sign the first admissible s
/// already carries a witness.
inline VanishingCertificate higher_ext_vanishes_xp(SBundle e, SBundle f, const Conventions &conv = {}) {
  VanishingCertificate cert;
  const long delta = static_cast<long>(f.m) - e.m;
  long lo = 0, hi = -1;
  // sign * (delta - s) <= -7
  if (conv.pfaffian_twist_sign < 0) {
    hi = delta - 7;
  } else {
    lo = std::max(0L, delta + 7);
    hi = lo + f.l + 1;
  }
  cert.range_lo = delta - hi; // recorded as the n' interval
  cert.range_hi = delta - lo;
  cert.bound = 7;
  for (long s = lo; s <= hi; ++s) {
    std::vector<InvariantContribution> cs;
    detail::contributions_at(e, f, s, cs);
    for (const auto &c : cs) {
      const long d = conv.pfaffian_twist_sign * c.n_prime;
      auto h = p6_line_cohomology(static_cast<int>(d));
      if (h.dim(6) == 0) continue;
      cert.verdict = false;
      cert.witness = ExtWitness{c.n_prime, SBundle{0, static_cast<int>(d)}, 6, c.multiplicity * h.dim(6)};
      return cert;
    }
  }
  return cert;
}

/// m' - m < max(l' - l, 0) + 7 for every ordered pair.
inline bool index_bound_check(const std::vector<SBundle> &gens) {
  for (const auto &a : gens)
    for (const auto &b : gens)
      if (b.m - a.m >= std::max(b.l - a.l, 0) + 7) return false;
  return true;
}

struct GradedHom {
  std::vector<Int> g_side, p_side;
};

/// Per p-degree b = 0..n_max, Hom dimensions on both phases.
inline GradedHom graded_hom_dim(SBundle e, SBundle f, int n_max, const Conventions &conv = {}) {
  if (n_max < 0) throw InvalidInput("negative grade cutoff");
  GradedHom out;
  for (int b = 0; b <= n_max; ++b) {
    const Int fibre = binomial(b + 6, 6);
    out.g_side.push_back(fibre * ext_g(e, f.twisted(b)).dim(0));
    // P^6 twist b comes from det-index n' = b / sign
    const long n_prime = conv.pfaffian_twist_sign * b;
    const long s = static_cast<long>(f.m) - e.m - n_prime;
    Int total = 0;
    if (s >= 0) {
      std::vector<InvariantContribution> cs;
      detail::contributions_at(e, f, s, cs);
      for (const auto &c : cs) total += c.multiplicity * p6_line_cohomology(b).dim(0);
    }
    out.p_side.push_back(total);
  }
  return out;
}

} // namespace pfwin
