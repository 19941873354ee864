// SPDX-License-Identifier: Apache-2.0
//
// Generator-and-relation presentations of quantum groups, bounded rewriting
// modulo relations, and coproduct checks.
#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qiso/nc_poly.hpp"

namespace qiso {

struct Presentation {
  std::string name;
  SymbolTable symbols;
  std::vector<NcPoly> relations;       // each means "relation = 0"
  std::map<int, NcPoly> coproduct;     // symbol -> Delta(symbol) on legs 0, 1

  bool has_coproduct() const { return !coproduct.empty(); }
};

/// Wang's A_u(Q): n^2 generators u(i,j) with u u^* = 1 = u^* u and
/// u' Q ubar Q^{-1} = 1 = Q ubar Q^{-1} u', and Delta(u_ij) = sum_k u_ik (x) u_kj.
Presentation au_q_presentation(int n, const Eigen::MatrixXcd& Q);

/// Disjoint union of generators and relations; clashing names get "#<block>".
Presentation free_product(const std::vector<Presentation>& ps);

/// Oriented rules lead -> rhs obtained from the relations (and their adjoints)
/// by sequential interreduction. No completion is attempted.
class RewriteSystem {
 public:
  struct Rule {
    Word lead;  // leg 0 letters
    NcPoly rhs;
  };

  explicit RewriteSystem(const Presentation& p);

  struct Result {
    NcPoly normal_form;
    bool bound_exceeded = false;
    bool step_limit_hit = false;
  };

  /// Normal form of p. Rules act inside each tensor leg separately.
  Result reduce(const NcPoly& p, int degree_bound) const;

  const std::vector<Rule>& rules() const { return rules_; }
  const WordOrder& order() const { return order_; }
  const SymbolTable& symbols() const { return *symbols_; }

 private:
  void insert(NcPoly rel);
  // First match of a rule inside w: (rule index, position), or nullopt.
  std::optional<std::pair<std::size_t, std::size_t>> match(const Word& w) const;
  NcPoly reduce_unbounded(const NcPoly& p, bool* exceeded, bool* limit, int bound) const;

  const SymbolTable* symbols_;
  WordOrder order_;
  std::vector<Rule> rules_;
};

RewriteSystem::Result reduce(const NcPoly& p, const Presentation& rels, int degree_bound);

enum class Verdict { ReducedToZero, NotReduced };

struct Implication {
  Verdict verdict = Verdict::NotReduced;
  NcPoly remainder;
  bool bound_exceeded = false;
};

/// One-directional: ReducedToZero proves membership in the relation ideal;
/// NotReduced is inconclusive and never a disproof.
std::vector<Implication> implies(const Presentation& rels, const std::vector<NcPoly>& candidates,
                                 int degree_bound);

/// Replaces every letter on leg `leg` by its coproduct (legs leg, leg+1) and
/// shifts later legs up by one.
NcPoly apply_coproduct(const Presentation& p, const NcPoly& x, int leg);

struct CoproductReport {
  bool coassociative = true;
  bool hopf_ideal = true;
  std::vector<std::string> coassociativity_failures;  // generator names
  std::vector<std::string> ideal_failures;             // relation strings
  bool bound_exceeded = false;

  bool ok() const { return coassociative && hopf_ideal; }
};

/// Checks (Delta (x) id) Delta = (id (x) Delta) Delta on generators and that
/// Delta(rel) reduces to zero modulo rels (x) 1 + 1 (x) rels.
CoproductReport check_coproduct(const Presentation& pres, int degree_bound);

/// Parses "A0*" style tokens into letters.
Letter parse_letter(const SymbolTable& syms, const std::string& token, int leg = 0);

}  // namespace qiso
