#pragma once

// K_0(G(2,7)) = Z^21 in the W^0 basis, and the numerical lattice of the
// Calabi-Yau section Y_G obtained as Z^21 modulo the radical of chi_Y.

#include "pfwin/matrix.hpp"
#include "pfwin/windows.hpp"

#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace pfwin {

using KClass = std::vector<Int>;

// Overall sign of [j_! E] relative to sum_k (-1)^k C(7,k) [E(-k)].
inline constexpr int kJShriekSign = 1;

struct KapranovCertificate {
  IntMatrix coordinates; ///< column j = generator j in the Kapranov basis
  Int det;
};

struct CY3Lattice {
  std::size_t r = 0;
  IntMatrix chi_y;   ///< 21x21, chi_Y on the W^0 basis
  IntMatrix res;     ///< r x 21 restriction to the quotient
  IntMatrix section; ///< 21 x r, lifts quotient coordinates (res * section = I)
  IntMatrix J;       ///< r x r pairing
  std::vector<Int> invariant_factors;

  [[nodiscard]] KClass restrict(const KClass &x) const { return res * x; }
};

class KTheory {
public:
  static const KTheory &instance() {
    static const KTheory k;
    return k;
  }

  [[nodiscard]] const std::vector<SBundle> &basis() const { return basis_.generators; }
  [[nodiscard]] const IntMatrix &gram0() const { return gram0_; }
  [[nodiscard]] const CY3Lattice &cy3() const { return cy3_; }

  [[nodiscard]] KClass unit(std::size_t i) const {
    KClass v(21);
    v[i] = 1;
    return v;
  }

  /// Coordinates of [x] in the W^0 basis: G^{-1} (chi(E_i, x))_i.
  [[nodiscard]] KClass class_of(SBundle x) const {
    if (basis_.contains(x)) return unit(basis_.index_of(x));
    KClass v(21);
    for (std::size_t i = 0; i < 21; ++i) v[i] = chi_g(basis()[i], x);
    return gram0_inv_ * v;
  }

  [[nodiscard]] Int chi(const KClass &a, const KClass &b) const {
    Int s = 0;
    const auto gb = gram0_ * b;
    for (std::size_t i = 0; i < 21; ++i) s += a[i] * gb[i];
    return s;
  }

  [[nodiscard]] Int chi_y(const KClass &a, const KClass &b) const {
    Int s = 0;
    const auto yb = cy3_.chi_y * b;
    for (std::size_t i = 0; i < 21; ++i) s += a[i] * yb[i];
    return s;
  }

  /// Columns are the classes of the given bundles.
  [[nodiscard]] IntMatrix class_matrix(const std::vector<SBundle> &bs) const {
    IntMatrix m(21, bs.size());
    for (std::size_t j = 0; j < bs.size(); ++j) m.set_column(j, class_of(bs[j]));
    return m;
  }

  /// Tensor by O(k) on Z^21.
  [[nodiscard]] IntMatrix line_twist(int k) const {
    std::vector<SBundle> tw;
    for (auto b : basis()) tw.push_back(b.twisted(k));
    return class_matrix(tw);
  }

  /// Tensor by O(k) on the quotient lattice.
  [[nodiscard]] IntMatrix line_twist_cy3(int k) const { return cy3_.res * line_twist(k) * cy3_.section; }

  /// Gram matrix chi(E_i, E_j) of an ordered collection; must be unit upper triangular.
  [[nodiscard]] IntMatrix gram(const std::vector<SBundle> &order) const {
    IntMatrix g(order.size(), order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = 0; j < order.size(); ++j) g(i, j) = chi_g(order[i], order[j]);
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (g(i, i) != 1) throw InconsistencyError("gram diagonal entry " + std::to_string(i) + " is not 1");
      for (std::size_t j = 0; j < i; ++j)
        if (g(i, j) != 0) throw InconsistencyError("gram matrix is not upper triangular in the given order");
    }
    return g;
  }

  /// Sigma^{(a,b)} S^v for 5 >= a >= b >= 0, i.e. S_{a-b, a}.
  static std::vector<SBundle> kapranov_basis() {
    std::vector<SBundle> out;
    for (int a = 0; a <= 5; ++a)
      for (int b = 0; b <= a; ++b) out.push_back({a - b, a});
    return out;
  }

  [[nodiscard]] KapranovCertificate kapranov_certificate(const std::vector<SBundle> &gens) const {
    const auto kb = kapranov_basis();
    IntMatrix gk(kb.size(), kb.size()), rhs(kb.size(), gens.size());
    for (std::size_t i = 0; i < kb.size(); ++i) {
      for (std::size_t j = 0; j < kb.size(); ++j) gk(i, j) = chi_g(kb[i], kb[j]);
      for (std::size_t j = 0; j < gens.size(); ++j) rhs(i, j) = chi_g(kb[i], gens[j]);
    }
    auto c = solve_integral(gk, rhs);
    if (!c) throw InconsistencyError("Kapranov system is singular or not integral");
    return {*c, c->square() ? determinant(*c) : Int(0)};
  }

  /// K-level left mutation of order.back() through all earlier objects,
  /// compared with [E (x) O(-7)] (the shift by dim G = 10 is even).
  [[nodiscard]] bool serre_mutation_identity(const std::vector<SBundle> &order) const {
    if (order.empty()) return true;
    KClass x = class_of(order.back());
    for (std::size_t i = order.size() - 1; i-- > 0;) {
      const KClass e = class_of(order[i]);
      const Int c = chi(e, x);
      for (std::size_t k = 0; k < 21; ++k) x[k] -= c * e[k];
    }
    return x == class_of(order.back().twisted(-7));
  }

  /// sum_i (-1)^i C(7,i) [E(-i)]: the class of E restricted to the zero locus
  /// of a section of O(1)^7, pushed forward.
  [[nodiscard]] KClass koszul_class(SBundle e) const {
    KClass v(21);
    for (int i = 0; i <= 7; ++i) {
      const Int c = (i % 2 ? -1 : 1) * binomial(7, i);
      const auto ci = class_of(e.twisted(-i));
      for (std::size_t k = 0; k < 21; ++k) v[k] += c * ci[k];
    }
    return v;
  }

  /// [j_! E] = [j_*(E(-7)[-7])], expanded via the Koszul complex of the zero section.
  [[nodiscard]] KClass jshriek_class(SBundle e, int sign = kJShriekSign) const {
    KClass v(21);
    for (int i = 0; i <= 7; ++i) {
      // (-1)^7 for the shift, (-1)^i from the Koszul term E(i-7)
      const Int c = sign * ((7 + i) % 2 ? -1 : 1) * binomial(7, i);
      const auto ci = class_of(e.twisted(i - 7));
      for (std::size_t k = 0; k < 21; ++k) v[k] += c * ci[k];
    }
    return v;
  }

  [[nodiscard]] bool prop_images_check(int sign = kJShriekSign) const {
    for (int l = 0; l <= 2; ++l)
      if (koszul_class({l, 0}) != jshriek_class({l, 0}, sign)) return false;
    return true;
  }

  /// The object E_l of the window shift Tr^l.
  static SBundle shift_object(int l) {
    if (l < 0 || l > 2) throw InvalidInput("window shifts are indexed by l = 0, 1, 2");
    return {l, 0};
  }

  /// Tr^l on Z^21: x -> x - chi(E_l, x) [j_! E_l].
  [[nodiscard]] IntMatrix transfer_matrix(int l) const {
    const auto e = class_of(shift_object(l));
    const auto j = jshriek_class(shift_object(l));
    const auto row = gram0_.transpose() * e; // chi(E_l, basis_k)
    IntMatrix t = IntMatrix::identity(21);
    for (std::size_t a = 0; a < 21; ++a)
      for (std::size_t b = 0; b < 21; ++b) t(a, b) -= j[a] * row[b];
    return t;
  }

  /// Spherical twist along res[E] on the quotient: y -> y - (e^T J y) e.
  [[nodiscard]] IntMatrix transvection(SBundle e) const {
    const auto v = cy3_.restrict(class_of(e));
    const auto row = cy3_.J.transpose() * v; // (e^T J)^T
    IntMatrix m = IntMatrix::identity(cy3_.r);
    for (std::size_t a = 0; a < cy3_.r; ++a)
      for (std::size_t b = 0; b < cy3_.r; ++b) m(a, b) -= v[a] * row[b];
    return m;
  }

  /// Koszul map from the quotient lattice back to Z^21, res x -> x * lambda_{-1}.
  /// It is well defined because multiplication by lambda_{-1} kills the radical.
  [[nodiscard]] const IntMatrix &kappa() const { return kappa_; }
  [[nodiscard]] bool kappa_kills_radical() const { return kappa_radical_zero_; }

  /// T_l kappa == kappa Tw^l.
  [[nodiscard]] bool intertwine_check(int l) const {
    return transfer_matrix(l) * kappa_ == kappa_ * transvection(shift_object(l));
  }

  /// Tw^l recovered from the transfer matrix alone: kappa^+ T_l kappa.
  [[nodiscard]] std::optional<IntMatrix> twist_from_transfer(int l) const {
    return solve_integral(kappa_, transfer_matrix(l) * kappa_);
  }

private:
  KTheory() : basis_(build_window({0, 0, 0})) {
    gram0_ = IntMatrix(21, 21);
    for (std::size_t i = 0; i < 21; ++i)
      for (std::size_t j = 0; j < 21; ++j) gram0_(i, j) = chi_g(basis()[i], basis()[j]);
    gram0_inv_ = inverse_unimodular(gram0_);
    build_cy3();
    build_kappa();
  }

  void build_cy3() {
    IntMatrix y(21, 21);
    for (int i = 0; i <= 7; ++i) {
      const Int c = (i % 2 ? -1 : 1) * binomial(7, i);
      y = y + c * (gram0_ * line_twist(-i));
    }
    if (!(y.transpose() == Int(-1) * y)) throw InconsistencyError("chi_Y is not antisymmetric");
    auto snf = smith_normal_form(y);
    if (snf.rank % 2) throw InconsistencyError("antisymmetric pairing has odd rank");
    const std::size_t r = snf.rank;
    const IntMatrix vinv = inverse_unimodular(snf.v);
    cy3_.r = r;
    cy3_.chi_y = y;
    cy3_.res = vinv.block(0, 0, r, 21);
    cy3_.section = snf.v.block(0, 0, 21, r);
    cy3_.J = (snf.v.transpose() * y * snf.v).block(0, 0, r, r);
    cy3_.invariant_factors = snf.invariant_factors;
    v_ = snf.v;
  }

  void build_kappa() {
    IntMatrix mlambda(21, 21);
    for (std::size_t j = 0; j < 21; ++j) mlambda.set_column(j, koszul_class(basis()[j]));
    const std::size_t r = cy3_.r;
    kappa_ = mlambda * v_.block(0, 0, 21, r);
    kappa_radical_zero_ = (mlambda * v_.block(0, r, 21, 21 - r)).is_zero();
  }

  WindowSpec basis_;
  IntMatrix gram0_, gram0_inv_, v_, kappa_;
  bool kappa_radical_zero_ = false;
  CY3Lattice cy3_;
};

struct TransferReport {
  int l = 0;
  std::size_t fixed_generators = 0;
  bool image_integral = false;   ///< Tr^l(W^l) has integral W^{l+1} coordinates
  bool koszul_expansion = false; ///< Tr^l(E_l) = -sum_{k>=1} (-1)^k C(7,k) E_l(-k)
  bool intertwines = false;
  [[nodiscard]] bool ok() const { return fixed_generators == 20 && image_integral && koszul_expansion && intertwines; }
};

inline TransferReport transfer_check(int l) {
  const auto &kt = KTheory::instance();
  TransferReport rep;
  rep.l = l;
  const auto src = build_window(notation_window(l));
  const auto dst = build_window(notation_window(l + 1));
  const IntMatrix t = kt.transfer_matrix(l);
  const IntMatrix a = kt.class_matrix(src.generators);
  const IntMatrix ta = t * a;
  for (std::size_t j = 0; j < 21; ++j)
    if (ta.column(j) == a.column(j)) ++rep.fixed_generators;
  auto coords = solve_integral(kt.class_matrix(dst.generators), ta);
  rep.image_integral = coords.has_value();
  if (coords) {
    const SBundle e = KTheory::shift_object(l);
    const auto col = coords->column(src.index_of(e));
    std::vector<Int> expect(21);
    for (int k = 1; k <= 7; ++k) expect[dst.index_of(e.twisted(-k))] = -((k % 2 ? -1 : 1) * binomial(7, k));
    rep.koszul_expansion = col == expect;
  }
  rep.intertwines = kt.intertwine_check(l);
  return rep;
}

} // namespace pfwin
