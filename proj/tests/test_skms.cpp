#include "pfwin/skms.hpp"

#include <gtest/gtest.h>

using namespace pfwin;

namespace {

const SkmsRepresentation &rep() { return SkmsRepresentation::instance(); }
IntMatrix id() { return IntMatrix::identity(rep().rank()); }
IntMatrix eval(const std::string &w) { return rep().evaluate_loop(rep().reduce_path(parse_word(w))); }

} // namespace

TEST(Words, ParseAndFormat) {
  const auto w = parse_word("gG  g2^-1 psi3 psi0^-1 gP");
  ASSERT_EQ(w.size(), 5u);
  EXPECT_EQ(w[1], (Letter{Letter::Gamma, 2, true}));
  EXPECT_EQ(w[2], (Letter{Letter::Psi, 3, false}));
  EXPECT_EQ(format_word(w), "gG g2^-1 psi3 psi0^-1 gP");
  EXPECT_TRUE(parse_word("   ").empty());
}

TEST(Words, BadTokens) {
  for (const char *t : {"g3", "psi4", "gX", "g0^-2", "psi", "^-1", "G0"}) EXPECT_THROW(parse_letter(t), WordError) << t;
}

TEST(Words, InverseWord) {
  const auto w = parse_word("g0 g1^-1 gP");
  EXPECT_EQ(format_word(inverse_word(w)), "gP^-1 g1 g0^-1");
  EXPECT_EQ(rep().evaluate_loop(w) * rep().evaluate_loop(inverse_word(w)), id());
}

TEST(Loops, Identities) {
  EXPECT_EQ(eval("g0 g0^-1"), id());
  EXPECT_EQ(eval(""), id());
  EXPECT_EQ(rep().evaluate_loop(big_circle_word()), id());
}

TEST(Loops, Homomorphism) {
  const std::string a = "g1 gG^-1 g2", b = "gP g0^-1";
  EXPECT_EQ(eval(a + " " + b), eval(a) * eval(b));
}

TEST(Loops, PreserveJ) {
  for (const char *g : {"gG", "g0", "g1", "g2", "gP", "gP^-1"})
    for (bool direct : {false, true}) EXPECT_TRUE(preserves_pairing(rep().generator(parse_letter(g), direct), KTheory::instance().cy3().J)) << g;
}

TEST(Loops, PsiHasNoMatrix) { EXPECT_THROW((void)rep().generator(parse_letter("psi1")), WordError); }

TEST(Reduce, WindowShiftPairs) {
  EXPECT_EQ(format_word(rep().reduce_path(parse_word("psi1^-1 psi0"))), "g0");
  EXPECT_EQ(format_word(rep().reduce_path(parse_word("psi3^-1 psi0"))), "g2 g1 g0");
  EXPECT_EQ(format_word(rep().reduce_path(parse_word("psi0^-1 psi2"))), "g0^-1 g1^-1");
  EXPECT_EQ(format_word(rep().reduce_path(parse_word("psi2^-1 psi2 g1"))), "g1");
  EXPECT_EQ(format_word(rep().reduce_path(parse_word("psi0^-1 psi3"), true)), "gP gG");
  EXPECT_EQ(eval("psi1^-1 psi0"), eval("g0"));
}

TEST(Reduce, PathErrors) {
  EXPECT_THROW(rep().reduce_path(parse_word("psi0")), WordError);
  EXPECT_THROW(rep().reduce_path(parse_word("psi0^-1")), WordError);
  EXPECT_THROW(rep().reduce_path(parse_word("psi0^-1 g1 psi0")), WordError);
  EXPECT_THROW(rep().reduce_path(parse_word("psi1 psi0")), WordError);
  EXPECT_THROW(rep().evaluate_direct(parse_word("psi1 psi0")), WordError);
  EXPECT_THROW(rep().evaluate_loop(parse_word("psi1^-1 psi0")), WordError);
}

TEST(Reduce, BothRoutesAgreeOnPolePairs) {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      const auto w = parse_word("psi" + std::to_string(a) + "^-1 psi" + std::to_string(b));
      EXPECT_EQ(rep().evaluate_loop(rep().reduce_path(w)), rep().evaluate_loop(rep().reduce_path(w, true))) << a << b;
    }
}

TEST(Direct, OpenPathEndsAtPfaffianSide) {
  const auto v = rep().evaluate_direct(parse_word("psi2 g0"));
  EXPECT_TRUE(v.at_pfaffian);
  EXPECT_FALSE(rep().evaluate_direct(parse_word("g0")).at_pfaffian);
}

TEST(Calibration, PoleSign) {
  const auto &cal = rep().calibration();
  EXPECT_EQ(cal.k_pole, 1);
  EXPECT_TRUE(maximally_unipotent(rep().generator(parse_letter("gP"))));
  // (x - 1)^4 = x^4 - 4x^3 + 6x^2 - 4x + 1
  const std::vector<Int> unipotent{1, -4, 6, -4, 1};
  EXPECT_TRUE(cal.charpoly_plus == unipotent || cal.charpoly_plus == std::vector<Int>(unipotent.rbegin(), unipotent.rend()));
  EXPECT_NE(cal.charpoly_minus, cal.charpoly_plus);
}

TEST(Calibration, MaximalUnipotencyPredicate) {
  EXPECT_FALSE(maximally_unipotent(IntMatrix::identity(4)));
  IntMatrix jordan = IntMatrix::identity(4);
  for (std::size_t i = 0; i < 3; ++i) jordan(i, i + 1) = 1;
  EXPECT_TRUE(maximally_unipotent(jordan));
}

TEST(Relations, RandomWords) {
  const auto r = check_relations(100);
  EXPECT_TRUE(r.ok()) << r.first_disagreement;
  EXPECT_EQ(r.words_checked, 100u);
  EXPECT_EQ(r.k_pole, 1);
}

TEST(Relations, DifferentSeedAlsoAgrees) { EXPECT_TRUE(check_relations(60, 99).ok()); }
