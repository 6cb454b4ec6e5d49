#include "pfwin/windows.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

using namespace pfwin;

namespace {

std::vector<SBundle> w0() { return build_window({0, 0, 0}).generators; }

using Key = std::tuple<std::vector<int>, int, long, Int>;

Key key(const InvariantContribution &c) { return {c.lambda.parts(), c.t, c.n_prime, c.multiplicity}; }

// Expand Hom(e, f (x) Sigma^lambda S) term by term and keep the summands
// whose symmetric power matches e; no closed-form index ranges.
std::multiset<Key> brute_contributions(SBundle e, SBundle f, int max_degree, long n_prime_min) {
  std::multiset<Key> out;
  for (int n = 0; n <= max_degree; ++n)
    for (const auto &ct : cauchy_sym(n, 7)) {
      const int a = ct.shape[0] - ct.shape[1];
      for (int t = 0; t <= std::min(a, f.l); ++t) {
        const int l2 = f.l + a - 2 * t;
        const long m2 = static_cast<long>(f.m) - ct.shape[1] - t;
        if (l2 != e.l) continue;
        if (m2 - e.m < n_prime_min) continue;
        out.insert({ct.shape.parts(), t, m2 - e.m, ct.multiplicity});
      }
    }
  return out;
}

} // namespace

TEST(ExtG, Examples) {
  EXPECT_EQ(ext_g({0, 0}, {0, 0}).dims, (std::map<int, Int>{{0, 1}}));
  EXPECT_EQ(ext_g({1, 0}, {1, 0}).dims, (std::map<int, Int>{{0, 1}}));
  EXPECT_EQ(ext_g({0, 0}, {0, -7}).dims, (std::map<int, Int>{{10, 1}}));
}

TEST(ExtG, DualSymmetry) {
  for (int l = 0; l <= 3; ++l)
    for (int l2 = 0; l2 <= 3; ++l2)
      for (int m = -8; m <= 8; m += 2)
        for (int m2 = -8; m2 <= 8; m2 += 3) {
          const SBundle e{l, m}, f{l2, m2};
          EXPECT_EQ(ext_g(e, f), ext_g(dual_of(f), dual_of(e))) << e.to_string() << " " << f.to_string();
        }
}

TEST(ExtG, GrassmannianVanishingDualForms) {
  for (int n : {5, 7, 9}) {
    const int lmax = n / 2 - 1;
    for (int l = 0; l <= lmax; ++l)
      for (int l2 = 0; l2 <= lmax; ++l2)
        for (int m = -3; m <= 3; ++m)
          for (int m2 = m; m2 <= 3; ++m2)
            EXPECT_TRUE(ext_g(dual_to_s_form(l, m), dual_to_s_form(l2, m2), n).higher_vanishes())
                << "G(2," << n << ") T_{" << l << "," << m << "} -> T_{" << l2 << "," << m2 << "}";
  }
}

TEST(ExtG, GrassmannianVanishingSForms) {
  for (int n : {5, 7, 9}) {
    const int lmax = n / 2 - 1;
    for (int l = 0; l <= lmax; ++l)
      for (int l2 = 0; l2 <= lmax; ++l2)
        for (int m = -3; m <= 3; ++m)
          for (int m2 = m; m2 <= 3; ++m2) {
            EXPECT_TRUE(ext_g({l, m}, {l2, m2}, n).higher_vanishes());
            EXPECT_TRUE(ext_g({l, m}, {l2, m2 + l2 - l}, n).higher_vanishes());
          }
  }
}

TEST(ExtG, NoHigherExtTowardsParallelDiagonalsOnTheRight) {
  for (const auto &m : {WindowTuple{0, 0, 0}, WindowTuple{6, 7, 8}}) {
    const auto g = build_window(m).generators;
    for (auto e : g)
      for (auto f : g)
        if (f.m - f.l >= e.m - e.l) {
          EXPECT_TRUE(ext_g(e, f).higher_vanishes()) << e.to_string() << " " << f.to_string();
        }
  }
}

TEST(XG, Examples) {
  EXPECT_TRUE(higher_ext_vanishes_xg({1, -3}, {1, -3}).verdict);
  EXPECT_TRUE(higher_ext_vanishes_xg({0, 0}, {0, 0}).verdict);
  const auto bad = higher_ext_vanishes_xg({0, 0}, {0, -7});
  EXPECT_FALSE(bad.verdict);
  ASSERT_TRUE(bad.witness);
  EXPECT_EQ(bad.witness->n, 0);
  EXPECT_EQ(bad.witness->degree, 10);
}

TEST(XG, BoundIsConservativeWithSafetyMargin) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> l(0, 3), m(-12, 12);
  for (int s = 0; s < 300; ++s) {
    const SBundle e{l(rng), m(rng)}, f{l(rng), m(rng)};
    const auto c = higher_ext_vanishes_xg(e, f);
    const auto wide = higher_ext_vanishes_xg(e, f, 20);
    EXPECT_EQ(c.verdict, wide.verdict) << e.to_string() << " " << f.to_string();
    EXPECT_LE(c.bound, c.range_hi);
    if (!c.verdict) {
      EXPECT_TRUE(c.witness.has_value());
    }
  }
}

TEST(XP, TrivialPairEnumeratesSquareShapes) {
  const auto cs = pfaffian_contributions({0, 0}, {0, 0}, -6);
  ASSERT_EQ(cs.size(), 7u);
  for (const auto &c : cs) {
    const int k = c.lambda[0];
    EXPECT_EQ(c.lambda[1], k);
    EXPECT_EQ(c.n_prime, -k);
    EXPECT_EQ(c.multiplicity, oracle::two_row_dim7(k, k));
  }
}

TEST(XP, InvariantCountMatchesTorusCharacter) {
  // SL(2)-invariants of Sym^n(S (x) C^7) = (weight-0 count) - (weight-2 count).
  for (int n = 0; n <= 6; ++n) {
    auto weight = [&](int w) {
      oracle::cpp_int total = 0;
      for (int p = 0; p <= n; ++p)
        if (p - (n - p) == w) total += oracle::choose(p + 6, 6) * oracle::choose(n - p + 6, 6);
      return total;
    };
    Int from_engine = 0;
    for (const auto &c : pfaffian_contributions({0, 0}, {0, 0}, -100))
      if (c.lambda.size() == n) from_engine += c.multiplicity;
    EXPECT_EQ(from_engine, weight(0) - weight(2)) << "n=" << n;
  }
}

TEST(XP, ContributionsMatchBruteForceExpansion) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> l(0, 2), m(-7, 7);
  for (int s = 0; s < 60; ++s) {
    const SBundle e{l(rng), m(rng)}, f{l(rng), m(rng)};
    const long nmin = -4;
    const long smax = static_cast<long>(f.m) - e.m - nmin;
    std::multiset<Key> engine;
    for (const auto &c : pfaffian_contributions(e, f, nmin)) engine.insert(key(c));
    const int max_degree = static_cast<int>(std::max(0L, 2 * smax + e.l - f.l));
    EXPECT_EQ(engine, brute_contributions(e, f, max_degree, nmin)) << e.to_string() << " " << f.to_string();
  }
}

TEST(XP, ContributionsAreSorted) {
  const auto cs = pfaffian_contributions({1, -2}, {2, 3}, -3);
  for (std::size_t i = 1; i < cs.size(); ++i) EXPECT_LE(cs[i - 1].n_prime, cs[i].n_prime);
}

TEST(XP, WindowPairStaysBelowBound) {
  EXPECT_TRUE(pfaffian_contributions({2, -6}, {0, 0}, 7).empty());
  EXPECT_TRUE(higher_ext_vanishes_xp({2, -6}, {0, 0}).verdict);
}

TEST(XP, OutOfWindowPairFails) {
  for (int l = 0; l <= 2; ++l) {
    const SBundle e{l, -3}, f{l, 4};
    const auto cs = pfaffian_contributions(e, f, 7);
    ASSERT_FALSE(cs.empty());
    EXPECT_EQ(cs.front().n_prime, 7);
    const auto c = higher_ext_vanishes_xp(e, f);
    EXPECT_FALSE(c.verdict);
    ASSERT_TRUE(c.witness);
    EXPECT_EQ(c.witness->degree, 6);
  }
}

TEST(XP, AllWindowPairsVanish) {
  for (const auto &m : {WindowTuple{0, 0, 0}, WindowTuple{6, 7, 8}}) {
    const auto g = build_window(m).generators;
    for (auto e : g)
      for (auto f : g) EXPECT_TRUE(higher_ext_vanishes_xp(e, f).verdict) << e.to_string() << " " << f.to_string();
  }
}

TEST(XP, FlippedSignIsCaught) {
  Conventions flipped{-kPfaffianTwistSign};
  std::size_t failures = 0;
  for (auto e : w0())
    for (auto f : w0())
      if (!higher_ext_vanishes_xp(e, f, flipped).verdict) ++failures;
  EXPECT_GT(failures, 0u);
}

TEST(XGandXP, EveryValidWindowVanishesOnBothPhases) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> start(-10, 8), step(0, 1);
  for (int s = 0; s < 10; ++s) {
    WindowTuple m{start(rng), 0, 0};
    m[1] = m[0] + step(rng);
    m[2] = m[1] + step(rng);
    const auto g = build_window(m).generators;
    for (auto e : g)
      for (auto f : g) {
        EXPECT_TRUE(higher_ext_vanishes_xg(e, f).verdict);
        EXPECT_TRUE(higher_ext_vanishes_xp(e, f).verdict);
      }
  }
}

TEST(IndexBound, Windows) {
  EXPECT_TRUE(index_bound_check(w0()));
  EXPECT_TRUE(index_bound_check(build_window({6, 7, 8}).generators));
  EXPECT_FALSE(index_bound_check({{1, 0}, {1, 7}}));
}

TEST(GradedHom, TrivialPair) {
  const auto h = graded_hom_dim({0, 0}, {0, 0}, 6);
  EXPECT_EQ(h.g_side[0], 1);
  EXPECT_EQ(h.p_side[0], 1);
  EXPECT_EQ(h.g_side, h.p_side);
}

TEST(GradedHom, MixedPair) {
  const auto h = graded_hom_dim({1, 0}, {2, -1}, 6);
  EXPECT_EQ(h.g_side, h.p_side);
}

TEST(GradedHom, AllW0PairsAgree) {
  for (auto e : w0())
    for (auto f : w0()) {
      const auto h = graded_hom_dim(e, f, 6);
      EXPECT_EQ(h.g_side, h.p_side) << e.to_string() << " " << f.to_string();
    }
}

TEST(GradedHom, FlippedSignDisagrees) {
  const auto h = graded_hom_dim({0, 0}, {0, 0}, 3, Conventions{-kPfaffianTwistSign});
  EXPECT_NE(h.g_side, h.p_side);
}

TEST(GradedHom, RejectsNegativeCutoff) { EXPECT_THROW(graded_hom_dim({0, 0}, {0, 0}, -1), InvalidInput); }

TEST(Sweeps, ParallelMatchesSerial) {
  const auto g = w0();
  auto run = [&](unsigned jobs) {
    return parallel_map<bool>(g.size() * g.size(), jobs,
                              [&](std::size_t k) { return higher_ext_vanishes_xg(g[k / 21], g[k % 21]).verdict; });
  };
  EXPECT_EQ(run(1), run(4));
}
