// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "qiso/io.hpp"
#include "qiso/models.hpp"

using namespace qiso;
using io::json;

namespace {

std::string data(const std::string& name) { return std::string(QISO_DATA_DIR) + "/" + name; }

bool same_poly(const NcPoly& a, const NcPoly& b) { return (a - b).pruned(1e-11).is_zero(); }

}  // namespace

TEST(Numbers, TwelveSignificantDigits) {
  EXPECT_EQ(io::round12(1.0 / 3.0), 0.333333333333);
  EXPECT_EQ(io::round12(0.0), 0.0);
  EXPECT_EQ(io::round12(-2.5e-20), -2.5e-20);
  EXPECT_EQ(io::number(std::nan("")), json("nan"));
  EXPECT_EQ(io::number(INFINITY), json("inf"));
}

TEST(Spec, RationalAndFloatPhasesRoundTrip) {
  AlgebraSpec s = AlgebraSpec::direct_sum({AlgebraSpec::circle(), AlgebraSpec::torus(Phase::rational(2, 7)),
                                           AlgebraSpec::torus(Phase::turns(0.1234567))});
  AlgebraSpec back = io::spec_from_json(io::to_json(s));
  EXPECT_TRUE(back == s);
  json j = io::to_json(AlgebraSpec::torus(Phase::rational(1, 5)));
  EXPECT_EQ(j["summands"][0]["phases"][1], "1/5");
}

TEST(Model, RoundTripAndValidation) {
  for (const auto& m : {models::circle(16), models::torus(6), models::disconnected(8)}) {
    auto back = io::model_from_json(io::to_json(m));
    EXPECT_EQ(back.truncation, m.truncation);
    EXPECT_EQ(back.dirac.kind, m.dirac.kind);
    EXPECT_TRUE(*back.spec == *m.spec);
  }
  json bad = io::to_json(models::torus(6));
  bad["dirac"]["kind"] = "sphere";
  EXPECT_THROW(io::model_from_json(bad), io::ParseError);
  json missing = io::to_json(models::circle(6));
  missing.erase("truncation");
  EXPECT_THROW(io::model_from_json(missing), io::ParseError);
}

TEST(Element, RoundTrip) {
  auto m = models::torus(3);
  AlgebraElement x(m.spec, 3);
  x.add({0, {1, -2}}, cplx(0.5, -1.25));
  x.add({0, {0, 0}}, 3.0);
  auto back = io::element_from_json(io::to_json(x), m.spec, 3);
  EXPECT_LT((back - x).max_abs(), 1e-15);
}

TEST(Matrix, RowMajorPairs) {
  Eigen::MatrixXcd a(2, 3);
  a << cplx(1, 2), cplx(3, 4), cplx(5, 6), cplx(7, 8), cplx(9, 10), cplx(11, 12);
  json j = io::to_json(a);
  EXPECT_EQ(j["rows"], 2);
  EXPECT_EQ(j["cols"], 3);
  EXPECT_EQ(j["data"][1], json::array({3.0, 4.0}));
  EXPECT_EQ(io::matrix_from_json(j), a);
  j["data"].erase(0);
  EXPECT_THROW(io::matrix_from_json(j), io::ParseError);
}

TEST(Polynomial, RoundTripWithAdjoints) {
  auto p = models::circle_isometry_presentation();
  for (const auto& r : p.relations) EXPECT_TRUE(same_poly(io::poly_from_json(io::to_json(r, p.symbols), p.symbols), r));
  json bad = json::array({{{"re", 1.0}, {"im", 0.0}, {"word", json::array({"Q"})}}});
  EXPECT_THROW(io::poly_from_json(bad, p.symbols), Error);
}

TEST(Action, RoundTripKeepsRealization) {
  auto a = models::double_torus_action();
  auto back = io::action_from_json(io::to_json(a));
  EXPECT_EQ(back.realization.dim, a.realization.dim);
  for (const auto& [name, m] : a.realization.matrices) EXPECT_LT((back.realization.at(name) - m).norm(), 1e-12) << name;
  ASSERT_EQ(back.ansatz.num_generators(), 2);
  for (int g = 0; g < 2; ++g) {
    const auto& want = a.ansatz.generators[static_cast<std::size_t>(g)];
    const auto& got = back.ansatz.generators[static_cast<std::size_t>(g)];
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t t = 0; t < got.size(); ++t) EXPECT_EQ(got[t].monomial, want[t].monomial);
  }
}

TEST(Action, AnsatzWithoutRealization) {
  auto a = io::action_from_json(io::read_file(data("circle_ansatz.json")));
  EXPECT_EQ(a.ansatz.generators[0].size(), 5u);
  EXPECT_LT(a.realization.dim, 1);
}

TEST(Presentation, RoundTripKeepsWeightsAndCoproduct) {
  auto p = models::semidirect_presentation();
  auto back = io::presentation_from_json(io::to_json(p));
  EXPECT_EQ(back.name, p.name);
  EXPECT_EQ(back.symbols[back.symbols.require("A_1")].weight, 4);
  ASSERT_EQ(back.relations.size(), p.relations.size());
  auto q = models::double_torus_presentation();
  auto qb = io::presentation_from_json(io::to_json(q));
  for (const auto& [s, rule] : q.coproduct) EXPECT_TRUE(same_poly(qb.coproduct.at(s), rule));
}

TEST(Output, DeterministicSortedKeys) {
  json a = io::to_json(models::circle_action());
  EXPECT_EQ(io::dump(a), io::dump(io::to_json(models::circle_action())));
  std::string text = io::dump(json{{"b", 1}, {"a", 2}});
  EXPECT_LT(text.find("\"a\""), text.find("\"b\""));
}

TEST(Files, MissingFileIsAParseError) {
  EXPECT_THROW(io::read_file("/nonexistent/x.json"), io::ParseError);
  auto tmp = std::filesystem::temp_directory_path() / "qiso_bad.json";
  {
    std::ofstream f(tmp);
    f << "{not json";
  }
  EXPECT_THROW(io::read_file(tmp.string()), io::ParseError);
  std::filesystem::remove(tmp);
}

TEST(ShippedData, MatchesTheModelFactories) {
  auto same = [](const std::string& file, const json& expect) {
    EXPECT_EQ(io::dump(io::read_file(data(file))), io::dump(expect)) << file;
  };
  same("circle.json", io::to_json(models::circle(16)));
  same("torus.json", io::to_json(models::torus(6)));
  same("disconnected.json", io::to_json(models::disconnected(8)));
  same("circle_action.json", io::to_json(models::circle_action()));
  same("double_torus_action.json", io::to_json(models::double_torus_action()));
  same("full_torus_action.json", io::to_json(models::full_torus_action(false)));
  same("full_torus_action_even_twist.json", io::to_json(models::full_torus_action(true)));
  same("circle_isometries.json", io::to_json(models::circle_isometry_presentation()));
  same("semidirect.json", io::to_json(models::semidirect_presentation()));
  same("double_torus.json", io::to_json(models::double_torus_presentation()));
  same("full_torus.json", io::to_json(models::full_torus_presentation()));
}
