#pragma once

// Fundamental groupoid of the five-punctured sphere acting on the Y_G lattice.
//
// Words are written like compositions: the rightmost letter acts first.
// Loops at m_G: gG (pole of the G-phase), g0, g1, g2 (equatorial holes) and
// gP, the p_P loop defined by the big-circle relation gG g2 g1 g0 gP = 1.
// psi0..psi3 are the window equivalences, edges m_G -> m_P.

#include "pfwin/klattice.hpp"

#include <array>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace pfwin {

class WordError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Letter {
  enum Kind { GammaG, Gamma, GammaP, Psi } kind = Gamma;
  int index = 0; ///< l for Gamma, k for Psi
  bool inverse = false;

  bool operator==(const Letter &) const = default;

  [[nodiscard]] Letter inverted() const { return {kind, index, !inverse}; }
  [[nodiscard]] std::string to_string() const {
    std::string s;
    switch (kind) {
    case GammaG: s = "gG"; break;
    case GammaP: s = "gP"; break;
    case Gamma: s = "g" + std::to_string(index); break;
    case Psi: s = "psi" + std::to_string(index); break;
    }
    return inverse ? s + "^-1" : s;
  }
};

using Word = std::vector<Letter>;

inline Letter parse_letter(const std::string &tok) {
  std::string base = tok;
  bool inv = false;
  if (base.size() > 3 && base.compare(base.size() - 3, 3, "^-1") == 0) {
    inv = true;
    base.resize(base.size() - 3);
  }
  if (base == "gG") return {Letter::GammaG, 0, inv};
  if (base == "gP") return {Letter::GammaP, 0, inv};
  if (base.size() == 2 && base[0] == 'g' && base[1] >= '0' && base[1] <= '2') return {Letter::Gamma, base[1] - '0', inv};
  if (base.size() == 4 && base.compare(0, 3, "psi") == 0 && base[3] >= '0' && base[3] <= '3')
    return {Letter::Psi, base[3] - '0', inv};
  throw WordError("unknown word token '" + tok + "'");
}

inline Word parse_word(const std::string &text) {
  std::istringstream in(text);
  Word w;
  for (std::string tok; in >> tok;) w.push_back(parse_letter(tok));
  return w;
}

inline std::string format_word(const Word &w) {
  std::string s;
  for (const auto &l : w) s += (s.empty() ? "" : " ") + l.to_string();
  return s;
}

inline Word inverse_word(const Word &w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverted());
  return out;
}

inline const Word &big_circle_word() {
  static const Word w = parse_word("gG g2 g1 g0 gP");
  return w;
}

inline bool preserves_pairing(const IntMatrix &m, const IntMatrix &j) { return m.transpose() * j * m == j; }

inline bool maximally_unipotent(const IntMatrix &m) {
  const IntMatrix n = m - IntMatrix::identity(m.rows());
  return !n.pow(3).is_zero() && n.pow(4).is_zero();
}

struct PoleCalibration {
  int k_pole = 0;
  std::vector<Int> charpoly_plus, charpoly_minus; ///< of the completing gP for k = +1, -1
};

class SkmsRepresentation {
public:
  static const SkmsRepresentation &instance() {
    static const SkmsRepresentation rep;
    return rep;
  }

  [[nodiscard]] const PoleCalibration &calibration() const { return cal_; }
  [[nodiscard]] std::size_t rank() const { return gG_.rows(); }

  [[nodiscard]] const IntMatrix &generator(const Letter &l, bool direct = false) const {
    const auto &tw = direct ? tw_direct_ : tw_;
    switch (l.kind) {
    case Letter::GammaG: return l.inverse ? gG_inv_ : gG_;
    case Letter::GammaP: return direct ? (l.inverse ? gP_direct_inv_ : gP_direct_) : (l.inverse ? gP_inv_ : gP_);
    case Letter::Gamma: return l.inverse ? tw[static_cast<std::size_t>(l.index)].second : tw[static_cast<std::size_t>(l.index)].first;
    case Letter::Psi: break;
    }
    throw WordError("psi" + std::to_string(l.index) + " is an edge m_G -> m_P and has no loop matrix");
  }

  /// Product of loop generators; psi letters are rejected.
  [[nodiscard]] IntMatrix evaluate_loop(const Word &w) const {
    IntMatrix m = IntMatrix::identity(rank());
    for (const auto &l : w) m = m * generator(l);
    return m;
  }

  /// Direct route: psi^k acts as psi0 o A_k with A_k = Tw0^-1 ... Tw_{k-1}^-1,
  /// where Tw^l is read off the Z^21 transfer matrices. A word ending at m_P
  /// evaluates to the formal value psi0 o X, reported as X.
  struct DirectValue {
    IntMatrix matrix;
    bool at_pfaffian = false;
  };

  [[nodiscard]] DirectValue evaluate_direct(const Word &w) const {
    IntMatrix x = IntMatrix::identity(rank());
    bool at_p = false;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (it->kind != Letter::Psi) {
        if (at_p) throw WordError("loop " + it->to_string() + " applied at m_P");
        x = generator(*it, true) * x;
        continue;
      }
      if (it->inverse != at_p) throw WordError("non-composable edge " + it->to_string());
      const auto k = static_cast<std::size_t>(it->index);
      x = (it->inverse ? a_inv_[k] : a_[k]) * x;
      at_p = !at_p;
    }
    return {x, at_p};
  }

  /// Rewrites psi pairs into loops. With `via_pole`, pairs involving psi3
  /// use (psi0)^-1 psi3 = gP gG instead of the equatorial chain.
  [[nodiscard]] Word reduce_path(const Word &w, bool via_pole = false) const {
    Word applied; // application order
    std::optional<int> pending;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (it->kind != Letter::Psi) {
        if (pending) throw WordError("loop " + it->to_string() + " applied at m_P");
        applied.push_back(*it);
        continue;
      }
      if (!it->inverse) {
        if (pending) throw WordError("psi" + std::to_string(it->index) + " applied at m_P");
        pending = it->index;
        continue;
      }
      if (!pending) throw WordError("psi" + std::to_string(it->index) + "^-1 applied at m_G");
      Word seg = pair_word(it->index, *pending, via_pole); // written order
      applied.insert(applied.end(), seg.rbegin(), seg.rend());
      pending.reset();
    }
    if (pending) throw WordError("path ends at m_P; it is a morphism to D(Y_P), not a loop");
    return {applied.rbegin(), applied.rend()};
  }

private:
  // (psi^a)^-1 psi^b in written order.
  static Word pair_word(int a, int b, bool via_pole) {
    if (via_pole && b == 3 && a != 3) {
      Word out = chain(a, 0);
      out.push_back({Letter::GammaP, 0, false});
      out.push_back({Letter::GammaG, 0, false});
      return out;
    }
    if (via_pole && a == 3 && b != 3) return inverse_word(pair_word(b, a, true));
    return chain(a, b);
  }

  static Word chain(int a, int b) {
    Word out;
    if (a > b)
      for (int j = a - 1; j >= b; --j) out.push_back({Letter::Gamma, j, false});
    else
      for (int j = a; j < b; ++j) out.push_back({Letter::Gamma, j, true});
    return out;
  }

  SkmsRepresentation() {
    const auto &kt = KTheory::instance();
    for (int l = 0; l <= 2; ++l) {
      auto t = kt.transvection(KTheory::shift_object(l));
      tw_[static_cast<std::size_t>(l)] = {t, inverse_unimodular(t)};
      auto d = kt.twist_from_transfer(l);
      if (!d) throw InconsistencyError("transfer matrix does not descend to the Y_G lattice");
      tw_direct_[static_cast<std::size_t>(l)] = {*d, inverse_unimodular(*d)};
    }
    const IntMatrix equatorial = tw_[2].first * tw_[1].first * tw_[0].first;
    auto completing = [&](int k) { return inverse_unimodular(kt.line_twist_cy3(k) * equatorial); };
    cal_.charpoly_plus = charpoly(completing(1));
    cal_.charpoly_minus = charpoly(completing(-1));
    for (int k : {1, -1})
      if (maximally_unipotent(completing(k))) {
        cal_.k_pole = k;
        break;
      }
    if (cal_.k_pole == 0) throw InconsistencyError("no pole sign makes the p_P loop maximally unipotent");

    gG_ = kt.line_twist_cy3(cal_.k_pole);
    gG_inv_ = inverse_unimodular(gG_);
    gP_ = completing(cal_.k_pole);
    gP_inv_ = inverse_unimodular(gP_);
    gP_direct_inv_ = gG_ * tw_direct_[2].first * tw_direct_[1].first * tw_direct_[0].first;
    gP_direct_ = inverse_unimodular(gP_direct_inv_);

    const std::size_t r = gG_.rows();
    a_[0] = a_inv_[0] = IntMatrix::identity(r);
    for (std::size_t k = 1; k <= 3; ++k) {
      a_[k] = a_[k - 1] * tw_direct_[k - 1].second;
      a_inv_[k] = tw_direct_[k - 1].first * a_inv_[k - 1];
    }
  }

  PoleCalibration cal_;
  std::array<std::pair<IntMatrix, IntMatrix>, 3> tw_, tw_direct_;
  IntMatrix gG_, gG_inv_, gP_, gP_inv_, gP_direct_, gP_direct_inv_;
  std::array<IntMatrix, 4> a_, a_inv_;
};

/// Random composable word at m_G: loop letters mixed with psi_b^-1 psi_a pairs.
inline Word random_composable_word(std::mt19937_64 &rng, int segments) {
  std::uniform_int_distribution<int> pick(0, 6), psi(0, 3), coin(0, 1);
  Word w;
  for (int s = 0; s < segments; ++s) {
    const int c = pick(rng);
    if (c <= 4) {
      Letter l = c == 0 ? Letter{Letter::GammaG, 0, false}
                 : c == 4 ? Letter{Letter::GammaP, 0, false}
                          : Letter{Letter::Gamma, c - 1, false};
      l.inverse = coin(rng) == 1;
      w.push_back(l);
    } else {
      w.push_back({Letter::Psi, psi(rng), true});
      w.push_back({Letter::Psi, psi(rng), false});
    }
  }
  return w;
}

struct RelationsReport {
  int k_pole = 0;
  bool big_circle = false;
  bool generators_preserve_pairing = false;
  std::array<bool, 3> window_shifts{}; ///< (psi^{j+1})^-1 psi^j reduces to g_j and matches both routes
  std::size_t words_checked = 0, words_agreeing = 0;
  std::string first_disagreement;
  [[nodiscard]] bool ok() const {
    return big_circle && generators_preserve_pairing && window_shifts[0] && window_shifts[1] && window_shifts[2] &&
           words_checked == words_agreeing;
  }
};

inline RelationsReport check_relations(std::size_t n_words = 100, std::uint64_t seed = 20240607) {
  const auto &rep = SkmsRepresentation::instance();
  const auto &kt = KTheory::instance();
  RelationsReport out;
  out.k_pole = rep.calibration().k_pole;
  out.big_circle = rep.evaluate_loop(big_circle_word()) == IntMatrix::identity(rep.rank());

  out.generators_preserve_pairing = true;
  for (const char *g : {"gG", "g0", "g1", "g2", "gP"})
    for (bool direct : {false, true})
      if (!preserves_pairing(rep.generator(parse_letter(g), direct), kt.cy3().J))
        out.generators_preserve_pairing = false;

  for (int j = 0; j <= 2; ++j) {
    const Word w = parse_word("psi" + std::to_string(j + 1) + "^-1 psi" + std::to_string(j));
    const Word red = rep.reduce_path(w);
    const auto direct = rep.evaluate_direct(w);
    out.window_shifts[static_cast<std::size_t>(j)] =
        red == Word{{Letter::Gamma, j, false}} && !direct.at_pfaffian &&
        direct.matrix == kt.transvection(KTheory::shift_object(j)) && kt.intertwine_check(j);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, 6);
  for (std::size_t i = 0; i < n_words; ++i) {
    const Word w = random_composable_word(rng, len(rng));
    const auto direct = rep.evaluate_direct(w).matrix;
    const bool agree = rep.evaluate_loop(rep.reduce_path(w)) == direct &&
                       rep.evaluate_loop(rep.reduce_path(w, true)) == direct;
    ++out.words_checked;
    if (agree)
      ++out.words_agreeing;
    else if (out.first_disagreement.empty())
      out.first_disagreement = format_word(w);
  }
  return out;
}

} // namespace pfwin
