// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "qiso/models.hpp"
#include "qiso/presentation.hpp"

using namespace qiso;

namespace {

std::string u(int i, int j) { return "u(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

NcPoly parse(const SymbolTable& syms, std::initializer_list<std::string> tokens, int leg = 0) {
  Word w;
  for (const auto& t : tokens) w.push_back(parse_letter(syms, t, leg));
  return NcPoly::word(w);
}

bool reduces_to_zero(const NcPoly& p, const Presentation& pres, int bound) {
  return reduce(p, pres, bound).normal_form.is_zero();
}

Presentation with_relations(std::initializer_list<std::string> names) {
  Presentation p;
  p.name = "test";
  for (const auto& n : names) p.symbols.add(n);
  return p;
}

// Coproduct u_ij -> sum_k u_ik (x) u_jk: not coassociative.
NcPoly transposed_rule(const Presentation& p, int n, int i, int j) {
  NcPoly out;
  for (int k = 0; k < n; ++k) {
    auto a = p.symbols.require(u(i, k));
    auto b = p.symbols.require(u(j, k));
    out += NcPoly::letter(a, false, 0) * NcPoly::letter(b, false, 1);
  }
  return out;
}

Eigen::MatrixXcd random_invertible(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = cplx(g(rng), g(rng));
  return q + 3.0 * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace

TEST(NcPoly, LettersOnDifferentLegsCommute) {
  SymbolTable s;
  int a = s.add("a"), b = s.add("b");
  NcPoly x = NcPoly::letter(b, false, 1) * NcPoly::letter(a, false, 0);
  NcPoly y = NcPoly::letter(a, false, 0) * NcPoly::letter(b, false, 1);
  EXPECT_TRUE((x - y).is_zero());
  NcPoly z = NcPoly::letter(b) * NcPoly::letter(a);
  EXPECT_FALSE((z - NcPoly::letter(a) * NcPoly::letter(b)).is_zero());
  EXPECT_EQ(x.max_leg(), 1);
}

TEST(NcPoly, AdjointIsAntilinearInvolutiveAndReversing) {
  SymbolTable s;
  int a = s.add("a"), b = s.add("b");
  NcPoly p = cplx(2.0, 1.0) * (NcPoly::letter(a) * NcPoly::letter(b, true)) + NcPoly::constant(cplx(0.0, 3.0));
  NcPoly q = adjoint(p);
  EXPECT_EQ(q.coeff(Word{{b, false, 0}, {a, true, 0}}), cplx(2.0, -1.0));
  EXPECT_EQ(q.coeff(Word{}), cplx(0.0, -3.0));
  EXPECT_TRUE((adjoint(q) - p).is_zero());
  NcPoly r = NcPoly::letter(a) + NcPoly::letter(b);
  EXPECT_TRUE((adjoint(p * r) - adjoint(r) * adjoint(p)).is_zero());
}

TEST(NcPoly, CancellationDropsTermsAndMonicScaling) {
  SymbolTable s;
  int a = s.add("a");
  NcPoly p = NcPoly::letter(a) - NcPoly::letter(a);
  EXPECT_TRUE(p.is_zero());
  WordOrder order(&s);
  NcPoly q = 4.0 * NcPoly::letter(a) * NcPoly::letter(a) + 2.0 * NcPoly::constant(1.0);
  NcPoly m = monic(q, order);
  EXPECT_EQ(m.coeff(Word{{a, false, 0}, {a, false, 0}}), cplx(1.0));
  EXPECT_EQ(m.coeff(Word{}), cplx(0.5));
  EXPECT_EQ(q.to_string(s).empty(), false);
}

TEST(WordOrder, WeightThenLengthThenAdjointAfterPlain) {
  SymbolTable s;
  int a = s.add("a"), b = s.add("b", 3);
  WordOrder order(&s);
  Word wa{{a, false, 0}}, wb{{b, false, 0}}, was{{a, true, 0}}, waa{{a, false, 0}, {a, false, 0}};
  EXPECT_TRUE(order.less(wa, wb));
  EXPECT_TRUE(order.less(wa, was));
  EXPECT_TRUE(order.less(wa, waa));
  EXPECT_TRUE(order.less(waa, wb));
  EXPECT_FALSE(order.less(wa, wa));
}

TEST(AuQ, OneByOneIsAUnitary) {
  auto p = au_q_presentation(1, Eigen::MatrixXcd::Identity(1, 1));
  EXPECT_EQ(p.relations.size(), 4u);
  NcPoly uus = parse(p.symbols, {u(0, 0), u(0, 0) + "*"}) - NcPoly::constant(1.0);
  NcPoly usu = parse(p.symbols, {u(0, 0) + "*", u(0, 0)}) - NcPoly::constant(1.0);
  EXPECT_TRUE(reduces_to_zero(uus, p, 2));
  EXPECT_TRUE(reduces_to_zero(usu, p, 2));
}

TEST(AuQ, ScalarQGivesSameIdeal) {
  auto p1 = au_q_presentation(1, Eigen::MatrixXcd::Identity(1, 1));
  auto p2 = au_q_presentation(1, 2.0 * Eigen::MatrixXcd::Identity(1, 1));
  for (const auto& r : p2.relations) EXPECT_TRUE(reduces_to_zero(r, p1, 4));
  for (const auto& r : p1.relations) EXPECT_TRUE(reduces_to_zero(r, p2, 4));
}

TEST(AuQ, TwoByTwoHasSixteenAdjointClosedRelations) {
  auto p = au_q_presentation(2, Eigen::MatrixXcd::Identity(2, 2));
  EXPECT_EQ(p.relations.size(), 16u);
  EXPECT_EQ(p.symbols.size(), 4);
  for (const auto& r : p.relations) EXPECT_TRUE(reduces_to_zero(adjoint(r), p, 4));
}

TEST(AuQ, SingularQIsRejected) {
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(2, 2);
  q(0, 0) = 1.0;
  EXPECT_THROW(au_q_presentation(2, q), Error);
}

TEST(AuQ, CoproductIsCoassociativeAndRelationsAreStable) {
  auto r = check_coproduct(au_q_presentation(2, Eigen::MatrixXcd::Identity(2, 2)), 6);
  EXPECT_TRUE(r.coassociative);
  EXPECT_TRUE(r.hopf_ideal);
}

TEST(AuQ, RandomInvertibleQ) {
  std::mt19937 rng(53);
  for (int n = 1; n <= 3; ++n) {
    auto p = au_q_presentation(n, random_invertible(n, rng));
    EXPECT_EQ(p.relations.size(), static_cast<std::size_t>(4 * n * n));
    auto r = check_coproduct(p, 6);
    EXPECT_TRUE(r.coassociative) << "n = " << n;
    EXPECT_TRUE(r.hopf_ideal) << "n = " << n;
  }
}

TEST(Coproduct, GrouplikeRuleOnBiunitaryBlockBreaksHopfIdeal) {
  auto p = au_q_presentation(2, Eigen::MatrixXcd::Identity(2, 2));
  for (auto& [sym, rule] : p.coproduct) rule = NcPoly::letter(sym, false, 0) * NcPoly::letter(sym, false, 1);
  auto r = check_coproduct(p, 6);
  EXPECT_TRUE(r.coassociative);
  EXPECT_FALSE(r.hopf_ideal);
  EXPECT_FALSE(r.ok());
}

TEST(Coproduct, TransposedRuleIsNotCoassociative) {
  auto p = au_q_presentation(2, Eigen::MatrixXcd::Identity(2, 2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      p.coproduct[p.symbols.require(u(i, j))] = transposed_rule(p, 2, i, j);
  auto r = check_coproduct(p, 6);
  EXPECT_FALSE(r.coassociative);
  EXPECT_EQ(r.coassociativity_failures.size(), 4u);
}

TEST(FreeProduct, UnionWithoutCrossRelations) {
  auto a = au_q_presentation(2, Eigen::MatrixXcd::Identity(2, 2));
  auto f = free_product({a, a});
  EXPECT_EQ(f.symbols.size(), 8);
  EXPECT_EQ(f.relations.size(), 32u);
  EXPECT_EQ(f.coproduct.size(), 8u);
  EXPECT_TRUE(check_coproduct(f, 4).coassociative);
  auto single = free_product({a});
  EXPECT_EQ(single.symbols.size(), 4);
  EXPECT_EQ(single.relations.size(), 16u);
  auto none = free_product({});
  EXPECT_EQ(none.symbols.size(), 0);
  EXPECT_TRUE(none.relations.empty());
}

TEST(Reduce, SmallExamples) {
  auto p = with_relations({"A", "B"});
  p.relations = {parse(p.symbols, {"A", "B"}), parse(p.symbols, {"B", "A"})};
  EXPECT_TRUE(reduces_to_zero(parse(p.symbols, {"A", "B"}) + parse(p.symbols, {"B", "A"}), p, 2));

  auto q = with_relations({"P"});
  q.relations = {parse(q.symbols, {"P", "P"}) - parse(q.symbols, {"P"})};
  auto res = implies(q, {parse(q.symbols, {"P", "P", "P"}) - parse(q.symbols, {"P"})}, 4);
  EXPECT_EQ(res[0].verdict, Verdict::ReducedToZero);

  auto e = with_relations({"u"});
  auto none = implies(e, {parse(e.symbols, {"u", "u*"}) - NcPoly::constant(1.0)}, 4);
  EXPECT_EQ(none[0].verdict, Verdict::NotReduced);
}

TEST(Reduce, BoundExceededIsReported) {
  auto q = with_relations({"P"});
  q.relations = {parse(q.symbols, {"P", "P"}) - parse(q.symbols, {"P"})};
  auto r = reduce(parse(q.symbols, {"P", "P", "P", "P", "P"}), q, 3);
  EXPECT_TRUE(r.bound_exceeded);
}

TEST(Reduce, IdempotentAndMultiplicativeModuloIdeal) {
  auto pres = models::semidirect_presentation();
  const auto& s = pres.symbols;
  std::vector<NcPoly> samples = {
      parse(s, {"V", "P", "V*"}) - parse(s, {"P"}),
      parse(s, {"A_1", "A_-1*"}) + parse(s, {"P", "V*"}),
      parse(s, {"A_1*", "A_1"}) + parse(s, {"A_-1*", "A_-1"}),
      parse(s, {"P", "V"}) - parse(s, {"V", "P"}),
  };
  for (const auto& p : samples) {
    auto once = reduce(p, pres, 4).normal_form;
    EXPECT_TRUE((reduce(once, pres, 4).normal_form - once).is_zero());
    for (const auto& q : samples) {
      auto lhs = reduce(p * q, pres, 8).normal_form;
      auto rhs = reduce(once * reduce(q, pres, 4).normal_form, pres, 8).normal_form;
      EXPECT_TRUE((lhs - rhs).pruned().is_zero());
    }
  }
  EXPECT_TRUE(reduce(samples[3], pres, 4).normal_form.is_zero());
  EXPECT_TRUE(reduce(samples[2] - NcPoly::constant(1.0), pres, 4).normal_form.is_zero());
}

TEST(CoproductRule, ApplyOnLegShiftsLaterLegs) {
  auto p = au_q_presentation(1, Eigen::MatrixXcd::Identity(1, 1));
  int g = p.symbols.require(u(0, 0));
  NcPoly x = NcPoly::letter(g, false, 0) * NcPoly::letter(g, true, 1);
  NcPoly y = apply_coproduct(p, x, 0);
  EXPECT_EQ(y.max_leg(), 2);
  Word expect{{g, false, 0}, {g, false, 1}, {g, true, 2}};
  EXPECT_EQ(y.coeff(expect), cplx(1.0));
}

TEST(ShippedPresentations, CoassociativeHopfIdeals) {
  for (const auto& p : {models::circle_isometry_presentation(), models::double_torus_presentation()}) {
    auto r = check_coproduct(p, 6);
    EXPECT_TRUE(r.coassociative) << p.name;
    EXPECT_TRUE(r.hopf_ideal) << p.name;
  }
}
