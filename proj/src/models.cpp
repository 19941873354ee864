// SPDX-License-Identifier: Apache-2.0
#include "qiso/models.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace qiso::models {

namespace {

NcPoly lt(const SymbolTable& s, const std::string& name, bool adj = false, int leg = 0) {
  return NcPoly::letter(s.require(name), adj, leg);
}

// Coproduct sum_t left_t (x) right_t from (left, right) name pairs; '*' marks an adjoint.
NcPoly tensor_sum(const SymbolTable& s, const std::vector<std::pair<std::string, std::string>>& pairs) {
  auto letter = [&](std::string n, int leg) {
    bool adj = !n.empty() && n.back() == '*';
    if (adj) n.pop_back();
    return lt(s, n, adj, leg);
  };
  NcPoly out;
  for (const auto& [l, r] : pairs) out += letter(l, 0) * letter(r, 1);
  return out;
}

Monomial mono(int u, int v) { return Monomial{0, {u, v}}; }

// twist[k] = t means U_k1 U_k2 = lambda^t U_k2 U_k1 on summand k.
std::vector<int> summand_twists(bool literal_parity) {
  return literal_parity ? std::vector<int>{0, 2, 0, 2, 0, 2, 0, 2} : std::vector<int>{0, 2, 2, 0, -2, 0, 0, -2};
}

std::string summand_generator(int k, int j) { return "U" + std::to_string(k + 1) + std::to_string(j + 1); }

}  // namespace

Phase torus_phase() { return Phase::rational(1, 5); }

SpectralModel circle(int truncation) { return SpectralModel::circle(truncation); }
SpectralModel torus(int truncation) { return SpectralModel::torus(torus_phase(), truncation); }
SpectralModel disconnected(int truncation) { return SpectralModel::disjoint_circles(2, truncation); }

Eigen::MatrixXcd shift(int n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) m((j + 1) % n, j) = 1.0;
  return m;
}

Eigen::MatrixXcd clock(int n, std::int64_t num, std::int64_t den) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = unit_from_turns(num * j, den);
  return m;
}

Eigen::MatrixXcd block_diagonal(const std::vector<Eigen::MatrixXcd>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    m.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return m;
}

ConcreteAction circle_action() {
  ConcreteAction a;
  int p = a.ansatz.symbols.add("A_1");
  int m = a.ansatz.symbols.add("A_-1");
  a.ansatz.generators = {{{Monomial{0, {1}}, NcPoly::letter(p)}, {Monomial{0, {-1}}, NcPoly::letter(m)}}};
  const int n = 4;
  Eigen::MatrixXcd V = block_diagonal({shift(n), shift(n)});
  Eigen::MatrixXcd P = block_diagonal({Eigen::MatrixXcd::Identity(n, n), Eigen::MatrixXcd::Zero(n, n)});
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
  a.realization.dim = 2 * n;
  a.realization.matrices = {{"A_1", V * P}, {"A_-1", V * (I - P)}, {"V", V}, {"P", P}};
  return a;
}

Presentation circle_isometry_presentation() {
  ConcreteAction act = circle_action();
  SpectralModel model = circle(4);
  LaplacianBuild b = build_laplacian(model);
  Presentation p;
  p.name = "isometries of the circle";
  p.symbols = act.ansatz.symbols;
  p.relations = derive_relations(act.ansatz, model, b.L, 2);
  const auto& s = p.symbols;
  p.coproduct[s.require("A_1")] = tensor_sum(s, {{"A_1", "A_1"}, {"A_-1*", "A_-1"}});
  p.coproduct[s.require("A_-1")] = tensor_sum(s, {{"A_-1", "A_1"}, {"A_1*", "A_-1"}});
  return p;
}

Presentation semidirect_presentation() {
  Presentation p;
  p.name = "functions on the semidirect product of T by Z_2";
  p.symbols.add("V");
  p.symbols.add("P");
  p.symbols.add("A_1", 4);
  p.symbols.add("A_-1", 4);
  const auto& s = p.symbols;
  NcPoly V = lt(s, "V"), Vs = lt(s, "V", true), P = lt(s, "P"), Ps = lt(s, "P", true);
  NcPoly one = NcPoly::constant(1.0);
  p.relations = {V * Vs - one, Vs * V - one, Ps - P, P * P - P, V * P - P * V,
                 lt(s, "A_1") - V * P, lt(s, "A_-1") - V + V * P};
  return p;
}

ActionAnsatz double_torus_ansatz() {
  ActionAnsatz a;
  for (const char* n : {"A0", "B0", "C0", "D0"}) a.symbols.add(n);
  const auto& s = a.symbols;
  a.generators = {{{mono(1, 0), lt(s, "A0")}, {mono(0, 1), lt(s, "B0")}},
                  {{mono(1, 0), lt(s, "C0")}, {mono(0, 1), lt(s, "D0")}}};
  return a;
}

ConcreteAction double_torus_action() {
  ConcreteAction a;
  a.ansatz = double_torus_ansatz();
  const Eigen::MatrixXcd I3 = Eigen::MatrixXcd::Identity(3, 3);
  const Eigen::MatrixXcd X3 = shift(3);
  Eigen::MatrixXcd A = Eigen::kroneckerProduct(X3, I3);
  Eigen::MatrixXcd D = Eigen::kroneckerProduct(I3, X3);
  Eigen::MatrixXcd Z9 = Eigen::MatrixXcd::Zero(9, 9), Z5 = Eigen::MatrixXcd::Zero(5, 5);
  // B0 C0 = lambda^2 C0 B0 on the twisted summand.
  Eigen::MatrixXcd B = clock(5, 2, 5), C = shift(5);
  a.realization.dim = 14;
  a.realization.matrices = {{"A0", block_diagonal({A, Z5})},
                            {"D0", block_diagonal({D, Z5})},
                            {"B0", block_diagonal({Z9, B})},
                            {"C0", block_diagonal({Z9, C})}};
  return a;
}

Presentation double_torus_presentation() {
  ActionAnsatz ans = double_torus_ansatz();
  SpectralModel model = torus(4);
  LaplacianBuild b = build_laplacian(model);
  Presentation p;
  p.name = "quantum double torus";
  p.symbols = ans.symbols;
  p.relations = derive_relations(ans, model, b.L, 2);
  const auto& s = p.symbols;
  p.coproduct[s.require("A0")] = tensor_sum(s, {{"A0", "A0"}, {"C0", "B0"}});
  p.coproduct[s.require("B0")] = tensor_sum(s, {{"B0", "A0"}, {"D0", "B0"}});
  p.coproduct[s.require("C0")] = tensor_sum(s, {{"A0", "C0"}, {"C0", "D0"}});
  p.coproduct[s.require("D0")] = tensor_sum(s, {{"B0", "C0"}, {"D0", "D0"}});
  return p;
}

ConcreteAction full_torus_action(bool literal_parity) {
  ConcreteAction a;
  auto& s = a.ansatz.symbols;
  for (int k = 1; k <= 8; ++k)
    for (int j = 1; j <= 2; ++j) s.add("U" + std::to_string(k) + std::to_string(j));
  auto sum = [&](const char* x, const char* y) { return lt(s, x) + lt(s, y); };
  a.ansatz.generators = {{{mono(1, 0), sum("U11", "U31")},
                          {mono(0, 1), sum("U52", "U62")},
                          {mono(-1, 0), sum("U21", "U41")},
                          {mono(0, -1), sum("U72", "U82")}},
                         {{mono(1, 0), sum("U51", "U71")},
                          {mono(0, 1), sum("U12", "U22")},
                          {mono(-1, 0), sum("U61", "U81")},
                          {mono(0, -1), sum("U32", "U42")}}};

  std::vector<int> twist = summand_twists(literal_parity);
  const Eigen::MatrixXcd I2 = Eigen::MatrixXcd::Identity(2, 2);
  std::vector<Eigen::MatrixXcd> first, second;
  for (int t : twist) {
    if (t == 0) {
      first.push_back(Eigen::kroneckerProduct(shift(2), I2));
      second.push_back(Eigen::kroneckerProduct(I2, clock(2, 1, 2)));
    } else {
      first.push_back(clock(5, t, 5));
      second.push_back(shift(5));
    }
  }
  int total = 0;
  for (const auto& b : first) total += static_cast<int>(b.rows());
  a.realization.dim = total;
  for (int k = 0; k < 8; ++k) {
    std::vector<Eigen::MatrixXcd> b1, b2, support;
    for (int l = 0; l < 8; ++l) {
      const auto n = first[static_cast<std::size_t>(l)].rows();
      Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(n, n);
      b1.push_back(l == k ? first[static_cast<std::size_t>(l)] : zero);
      b2.push_back(l == k ? second[static_cast<std::size_t>(l)] : zero);
      support.push_back(l == k ? Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n, n)) : zero);
    }
    a.realization.matrices[summand_generator(k, 0)] = block_diagonal(b1);
    a.realization.matrices[summand_generator(k, 1)] = block_diagonal(b2);
    a.realization.matrices["P" + std::to_string(k + 1)] = block_diagonal(support);
  }
  return a;
}

Presentation full_torus_presentation() {
  Presentation p;
  p.name = "isometries of the twisted torus";
  for (int k = 0; k < 8; ++k)
    for (int j = 0; j < 2; ++j) p.symbols.add(summand_generator(k, j));
  for (int k = 0; k < 8; ++k) p.symbols.add("P" + std::to_string(k + 1), 3);
  const auto& s = p.symbols;
  const std::vector<int> twist = summand_twists(false);
  const NcPoly one = NcPoly::constant(1.0);
  auto proj = [&](int k) { return lt(s, "P" + std::to_string(k + 1)); };
  auto gen = [&](int k, int j, bool adj = false) { return lt(s, summand_generator(k, j), adj); };

  NcPoly total = -1.0 * one;
  for (int k = 0; k < 8; ++k) {
    NcPoly P = proj(k);
    total += P;
    p.relations.push_back(adjoint(P) - P);
    p.relations.push_back(P * P - P);
    for (int l = 0; l < 8; ++l)
      if (l != k) p.relations.push_back(P * proj(l));
    for (int j = 0; j < 2; ++j) {
      NcPoly u = gen(k, j), us = gen(k, j, true);
      p.relations.push_back(us * u - P);
      p.relations.push_back(u * us - P);
      p.relations.push_back(u * P - u);
      p.relations.push_back(P * u - u);
    }
    cplx mu = torus_phase().pow(twist[static_cast<std::size_t>(k)]).value();
    for (bool a : {false, true})
      for (bool b : {false, true}) {
        cplx c = a == b ? mu : std::conj(mu);
        p.relations.push_back(gen(k, 0, a) * gen(k, 1, b) - c * (gen(k, 1, b) * gen(k, 0, a)));
      }
    // Generators of different summands multiply to zero.
    for (int l = 0; l < 8; ++l) {
      if (l == k) continue;
      for (int j = 0; j < 2; ++j)
        for (int m = 0; m < 2; ++m)
          for (bool a : {false, true})
            for (bool b : {false, true}) p.relations.push_back(gen(k, j, a) * gen(l, m, b));
    }
  }
  p.relations.push_back(total);
  return p;
}

}  // namespace qiso::models
