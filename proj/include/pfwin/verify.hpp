#pragma once

// The twelve end-to-end acceptance checks. Each returns a pass flag, a one
// line detail and, on failure, the first witness found.

#include "pfwin/mutation.hpp"
#include "pfwin/skms.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace pfwin {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  std::string witness;
  double seconds = 0;
};

struct VerifyOptions {
  unsigned jobs = 1;
  Conventions conventions{};
  std::uint64_t seed = 20240607;
};

namespace detail {

inline std::string profile_string(const CohomologyProfile &p) {
  std::string s = "{";
  for (const auto &[d, r] : p.terms) s += (s.size() > 1 ? "," : "") + std::to_string(d) + ":" + r.dim.str();
  return s + "}";
}

inline std::string ext_string(const ExtProfile &p) {
  std::string s = "{";
  for (const auto &[d, v] : p.dims) s += (s.size() > 1 ? "," : "") + std::to_string(d) + ":" + v.str();
  return s + "}";
}

inline std::vector<std::pair<std::string, WindowTuple>> named_windows() {
  return {{"W0", notation_window(0)}, {"W1", notation_window(1)}, {"W2", notation_window(2)},
          {"W3", notation_window(3)}, {"W(6,7,8)", ads_window()}};
}

inline std::vector<WindowTuple> random_windows(std::mt19937_64 &rng, std::size_t count) {
  std::uniform_int_distribution<int> start(-10, 10), step(0, 1);
  std::vector<WindowTuple> out;
  while (out.size() < count) {
    WindowTuple m{start(rng), 0, 0};
    m[1] = m[0] + step(rng);
    m[2] = m[1] + step(rng);
    if (m[2] <= 10) out.push_back(m);
  }
  return out;
}

struct Fail {
  std::string witness;
};

inline void require(bool cond, const std::string &witness) {
  if (!cond) throw Fail{witness};
}

} // namespace detail

inline CheckResult check_bwb_anchors(const VerifyOptions &) {
  using detail::require;
  auto expect = [](const CohomologyProfile &p, std::map<int, long> want, const std::string &what) {
    std::map<int, long> got;
    for (const auto &[d, r] : p.terms) got[d] = static_cast<long>(r.dim);
    require(got == want, what + " gave " + detail::profile_string(p));
  };
  expect(cohomology_of({0, 0}), {{0, 1}}, "H(G,O)");
  expect(cohomology_of({0, -7}), {{10, 1}}, "H(G,O(-7))");
  expect(cohomology_of(dual_of({1, 0})), {{0, 7}}, "H(G,S^v)");
  expect(cohomology_of({1, 0}), {}, "H(G,S)");
  expect(bwb_cohomology({1, 2, {-1}, {0}}), {}, "H(P1,O(-1))");
  expect(bwb_cohomology({1, 2, {-2}, {0}}), {{1, 1}}, "H(P1,O(-2))");
  expect(p6_line_cohomology(-7), {{6, 1}}, "H(P6,O(-7))");
  return {0, "", true, "7 anchors exact", ""};
}

inline CheckResult check_windows(const VerifyOptions &opt) {
  using detail::require;
  const auto &kt = KTheory::instance();
  std::mt19937_64 rng(opt.seed);
  std::vector<std::pair<std::string, WindowTuple>> all = detail::named_windows();
  for (auto m : detail::random_windows(rng, 50)) all.push_back({tuple_string(m), m});
  std::size_t lefschetz = 0;
  for (const auto &[name, m] : all) {
    const auto w = build_window(m);
    require(w.generators.size() == 21, name + ": generator count");
    const auto rep = check_exceptionality(w, opt.jobs);
    require(rep.verdict, name + ": Hom-digraph not acyclic or endomorphisms not exceptional");
    if (rep.lefschetz_order_valid) ++lefschetz;
    try {
      require(determinant(kt.gram(rep.order)) == 1, name + ": gram determinant");
    } catch (const InconsistencyError &e) {
      require(false, name + ": " + e.what());
    }
    const auto cert = kt.kapranov_certificate(w.generators);
    require(abs(cert.det) == 1, name + ": Kapranov determinant " + cert.det.str());
  }
  return {0, "", true,
          std::to_string(all.size()) + " windows exceptional, unit-triangular gram, Kapranov det +-1; Lefschetz block order valid for " +
              std::to_string(lefschetz),
          ""};
}

inline CheckResult check_mutation_chain(const VerifyOptions &) {
  using detail::require;
  const auto chain = mutation_chain();
  for (const auto &s : chain.steps)
    require(s.ok(), s.from + " -> " + s.to + " at " + s.mutated.to_string() + ": sink=" + std::to_string(s.is_sink) +
                        " set=" + std::to_string(s.set_equal) + " serre=" + std::to_string(s.serre_identity));
  require(chain.d_is_a_twisted, "D != A(-1)");
  const auto &kt = KTheory::instance();
  for (const auto &[name, m] : detail::named_windows()) {
    const auto order = check_exceptionality(build_window(m)).order;
    require(kt.serre_mutation_identity(order), name + ": Serre identity");
  }
  return {0, "", true, "A->B->C->D, C->E replayed; D = A(-1); Serre identity on 5 windows", ""};
}

inline CheckResult check_xg_sweep(const VerifyOptions &opt) {
  using detail::require;
  long max_bound = 0;
  std::size_t pairs = 0;
  for (const auto &[name, m] : detail::named_windows()) {
    const auto g = build_window(m).generators;
    auto certs = parallel_map<VanishingCertificate>(g.size() * g.size(), opt.jobs, [&](std::size_t k) {
      return higher_ext_vanishes_xg(g[k / g.size()], g[k % g.size()]);
    });
    for (std::size_t k = 0; k < certs.size(); ++k) {
      const auto &c = certs[k];
      require(c.verdict, name + ": " + g[k / g.size()].to_string() + " -> " + g[k % g.size()].to_string() + " has Ext^" +
                             std::to_string(c.witness->degree) + " at n=" + std::to_string(c.witness->n));
      max_bound = std::max(max_bound, c.bound);
      ++pairs;
    }
  }
  return {0, "", true, std::to_string(pairs) + " pairs vanish; largest certified scan bound N0=" + std::to_string(max_bound), ""};
}

inline CheckResult check_xp_sweep(const VerifyOptions &opt) {
  using detail::require;
  std::size_t pairs = 0;
  for (const auto &[name, m] : detail::named_windows()) {
    const auto g = build_window(m).generators;
    require(index_bound_check(g), name + ": index bound inequality");
    auto certs = parallel_map<VanishingCertificate>(g.size() * g.size(), opt.jobs, [&](std::size_t k) {
      return higher_ext_vanishes_xp(g[k / g.size()], g[k % g.size()], opt.conventions);
    });
    for (std::size_t k = 0; k < certs.size(); ++k) {
      require(certs[k].verdict, name + ": " + g[k / g.size()].to_string() + " -> " + g[k % g.size()].to_string() +
                                    " has H^6 from n'=" + std::to_string(certs[k].witness->n));
      ++pairs;
    }
  }
  // out-of-window control: l = l', m' - m = 7
  const auto ctrl = higher_ext_vanishes_xp({0, 0}, {0, 7}, opt.conventions);
  require(!ctrl.verdict && ctrl.witness, "control pair O -> O(7) was not flagged");
  require(!index_bound_check({{0, 0}, {0, 7}}), "control set passes the index bound");
  return {0, "", true,
          std::to_string(pairs) + " pairs vanish; control O -> O(7) fails with H^6 dim " + ctrl.witness->dim.str() +
              " at n'=" + std::to_string(ctrl.witness->n),
          ""};
}

inline CheckResult check_grassmannian_vanishing(const VerifyOptions &) {
  using detail::require;
  std::size_t cases = 0;
  for (int n : {5, 7, 9}) {
    const int lmax = n / 2 - 1; // l <= n/2 - 1 with n odd
    for (int l = 0; l <= lmax; ++l)
      for (int l2 = 0; l2 <= lmax; ++l2)
        for (int m = -3; m <= 3; ++m)
          for (int m2 = m; m2 <= 3; ++m2) {
            const auto t1 = dual_to_s_form(l, m), t2 = dual_to_s_form(l2, m2);
            const std::string at = " on G(2," + std::to_string(n) + ")";
            require(ext_g(t1, t2, n).higher_vanishes(), "T" + t1.to_string() + " -> T" + t2.to_string() + at);
            require(ext_g({l, m}, {l2, m2}, n).higher_vanishes(),
                    SBundle{l, m}.to_string() + " -> " + SBundle{l2, m2}.to_string() + at);
            require(ext_g({l, m}, {l2, m2 + l2 - l}, n).higher_vanishes(),
                    SBundle{l, m}.to_string() + " -> " + SBundle{l2, m2 + l2 - l}.to_string() + at);
            cases += 3;
          }
  }
  return {0, "", true, std::to_string(cases) + " vanishings on G(2,5), G(2,7), G(2,9)", ""};
}

inline CheckResult check_spherical_pattern(const VerifyOptions &) {
  using detail::require;
  const auto &kt = KTheory::instance();
  for (int l = 0; l <= 2; ++l) {
    const SBundle e{l, 0};
    for (int i = 0; i <= 7; ++i) {
      const auto p = ext_g(e, e.twisted(-i));
      std::map<int, Int> want;
      if (i == 0) want = {{0, 1}};
      if (i == 7) want = {{10, 1}};
      require(p.dims == want, "Ext(" + e.to_string() + ", " + e.twisted(-i).to_string() + ") = " + detail::ext_string(p));
    }
    const auto c = kt.class_of(e);
    require(kt.chi_y(c, c) == 0, "chi_Y(E,E) != 0 for " + e.to_string());
  }
  return {0, "", true, "Koszul Ext pattern and chi_Y(E,E)=0 for O, S, Sym^2 S", ""};
}

inline CheckResult check_lattice(const VerifyOptions &) {
  using detail::require;
  const auto &kt = KTheory::instance();
  const auto &cy = kt.cy3();
  require(cy.chi_y.transpose() == Int(-1) * cy.chi_y, "chi_Y not antisymmetric");
  require(cy.r % 2 == 0, "odd rank " + std::to_string(cy.r));
  require(cy.J.transpose() == Int(-1) * cy.J, "J not antisymmetric");
  for (int l = 0; l <= 2; ++l) {
    const auto t = kt.transvection({l, 0});
    require(preserves_pairing(t, cy.J), "Tw^" + std::to_string(l) + " does not preserve J");
    require((t - IntMatrix::identity(cy.r)).pow(static_cast<unsigned>(cy.r)).is_zero(), "Tw^" + std::to_string(l) + " not unipotent");
  }
  for (int k = -3; k <= 3; ++k)
    require(preserves_pairing(kt.line_twist_cy3(k), cy.J), "O(" + std::to_string(k) + ") does not preserve J");
  return {0, "", true, "chi_Y antisymmetric of rank " + std::to_string(cy.r) + ", det J = " + determinant(cy.J).str() +
                           "; twists preserve J", ""};
}

inline CheckResult check_prop_images(const VerifyOptions &) {
  using detail::require;
  require(KTheory::instance().prop_images_check(), "Koszul class != [j_! E]");
  return {0, "", true, "[k_* pi^* E|Y] = [j_! E] for O, S, Sym^2 S with sign +1", ""};
}

inline CheckResult check_window_shifts(const VerifyOptions &) {
  using detail::require;
  require(KTheory::instance().kappa_kills_radical(), "Koszul map does not kill the chi_Y radical");
  for (int l = 0; l <= 2; ++l) {
    const auto r = transfer_check(l);
    require(r.ok(), "Tr^" + std::to_string(l) + ": fixed=" + std::to_string(r.fixed_generators) +
                        " integral=" + std::to_string(r.image_integral) + " koszul=" + std::to_string(r.koszul_expansion) +
                        " intertwines=" + std::to_string(r.intertwines));
  }
  return {0, "", true, "Tr^0..2 fix 20 generators, land in W^{l+1}, intertwine with Tw^l", ""};
}

inline CheckResult check_relations_criterion(const VerifyOptions &opt) {
  using detail::require;
  const auto &kt = KTheory::instance();
  const auto a0 = kt.class_matrix(build_window(notation_window(0)).generators);
  const auto a3 = kt.class_matrix(build_window(notation_window(3)).generators);
  const auto tw = kt.line_twist(-1) * a0;
  require(solve_integral(a3, tw) && solve_integral(tw, a3), "W3 lattice != W0 lattice (x) O(-1)");
  const auto rel = check_relations(100, opt.seed);
  require(rel.big_circle, "big-circle word is not the identity");
  require(rel.generators_preserve_pairing, "a generator does not preserve J");
  for (int j = 0; j <= 2; ++j) require(rel.window_shifts[static_cast<std::size_t>(j)], "window shift " + std::to_string(j));
  require(rel.words_checked == rel.words_agreeing, "reduce vs direct differ on " + rel.first_disagreement);
  return {0, "", true, "W3 = W0(-1); big circle = 1 with k_pole=" + std::to_string(rel.k_pole) + "; " +
                           std::to_string(rel.words_agreeing) + " random words agree", ""};
}

inline CheckResult check_graded_hom(const VerifyOptions &opt) {
  using detail::require;
  std::mt19937_64 rng(opt.seed);
  const auto g = build_window(notation_window(0)).generators;
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  std::vector<std::pair<SBundle, SBundle>> pairs{{{0, 0}, {0, 0}}, {{1, 0}, {2, -1}}};
  while (pairs.size() < 12) pairs.push_back({g[pick(rng)], g[pick(rng)]});
  for (const auto &[e, f] : pairs) {
    const auto h = graded_hom_dim(e, f, 6, opt.conventions);
    require(h.g_side == h.p_side, e.to_string() + " -> " + f.to_string());
  }
  return {0, "", true, std::to_string(pairs.size()) + " pairs agree in grades 0..6", ""};
}

struct AcceptanceCheck {
  int id;
  std::string name;
  std::function<CheckResult(const VerifyOptions &)> run;
};

inline const std::vector<AcceptanceCheck> &acceptance_checks() {
  static const std::vector<AcceptanceCheck> checks{
      {1, "bwb-calibration", check_bwb_anchors},
      {2, "window-exceptionality", check_windows},
      {3, "mutation-chain", check_mutation_chain},
      {4, "xg-vanishing", check_xg_sweep},
      {5, "xp-vanishing", check_xp_sweep},
      {6, "grassmannian-vanishing", check_grassmannian_vanishing},
      {7, "spherical-pattern", check_spherical_pattern},
      {8, "cy3-lattice", check_lattice},
      {9, "jshriek-classes", check_prop_images},
      {10, "window-shifts", check_window_shifts},
      {11, "monodromy-relations", check_relations_criterion},
      {12, "graded-hom", check_graded_hom},
  };
  return checks;
}

inline CheckResult run_check(const AcceptanceCheck &c, const VerifyOptions &opt) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = c.run(opt);
  } catch (const detail::Fail &f) {
    r.pass = false;
    r.witness = f.witness;
  } catch (const std::exception &e) {
    r.pass = false;
    r.witness = std::string("exception: ") + e.what();
  }
  r.id = c.id;
  r.name = c.name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::vector<CheckResult> run_acceptance(const VerifyOptions &opt = {}) {
  std::vector<CheckResult> out;
  for (const auto &c : acceptance_checks()) out.push_back(run_check(c, opt));
  return out;
}

} // namespace pfwin
