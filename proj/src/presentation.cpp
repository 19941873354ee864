// SPDX-License-Identifier: Apache-2.0
#include "qiso/presentation.hpp"

#include <Eigen/LU>

#include <deque>

#include "qiso/toric_algebra.hpp"

namespace qiso {

namespace {

constexpr std::size_t kStepLimit = 2'000'000;

std::string u_name(int i, int j) { return "u(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

}  // namespace

Presentation au_q_presentation(int n, const Eigen::MatrixXcd& Q) {
  if (n < 1) throw Error("A_u(Q) needs n >= 1");
  if (Q.rows() != n || Q.cols() != n) throw Error("Q must be n x n");
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(Q);
  if (lu.rank() < n) throw Error("Q is singular");
  const Eigen::MatrixXcd Qi = lu.inverse();

  Presentation p;
  p.name = "A_u(Q), n=" + std::to_string(n);
  std::vector<int> id(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) id[static_cast<std::size_t>(i * n + j)] = p.symbols.add(u_name(i, j));
  auto u = [&](int i, int j, bool adj) { return NcPoly::letter(id[static_cast<std::size_t>(i * n + j)], adj); };
  auto delta = [](int i, int j) { return NcPoly::constant(i == j ? 1.0 : 0.0); };

  // u u^* = 1
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      NcPoly r = -1.0 * delta(i, j);
      for (int k = 0; k < n; ++k) r += u(i, k, false) * u(j, k, true);
      p.relations.push_back(r.pruned(1e-13));
    }
  // u^* u = 1
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      NcPoly r = -1.0 * delta(i, j);
      for (int k = 0; k < n; ++k) r += u(k, i, true) * u(k, j, false);
      p.relations.push_back(r.pruned(1e-13));
    }
  // u' Q ubar Q^{-1} = 1, with u'_ik = u_ki and ubar_lm = u_lm^*
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      NcPoly r = -1.0 * delta(i, j);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m) {
            cplx c = Q(k, l) * Qi(m, j);
            if (std::abs(c) < 1e-15) continue;
            r += c * (u(k, i, false) * u(l, m, true));
          }
      p.relations.push_back(r.pruned(1e-13));
    }
  // Q ubar Q^{-1} u' = 1
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      NcPoly r = -1.0 * delta(i, j);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m) {
            cplx c = Q(i, k) * Qi(l, m);
            if (std::abs(c) < 1e-15) continue;
            r += c * (u(k, l, true) * u(j, m, false));
          }
      p.relations.push_back(r.pruned(1e-13));
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      NcPoly d;
      for (int k = 0; k < n; ++k) d += u(i, k, false) * u(k, j, false).on_leg(1);
      p.coproduct.emplace(id[static_cast<std::size_t>(i * n + j)], d);
    }
  return p;
}

Presentation free_product(const std::vector<Presentation>& ps) {
  Presentation out;
  out.name = "free product";
  for (std::size_t b = 0; b < ps.size(); ++b) {
    const auto& p = ps[b];
    std::vector<int> remap(static_cast<std::size_t>(p.symbols.size()));
    for (int s = 0; s < p.symbols.size(); ++s) {
      std::string name = p.symbols[s].name;
      if (out.symbols.find(name) >= 0) name += "#" + std::to_string(b);
      remap[static_cast<std::size_t>(s)] = out.symbols.add(name, p.symbols[s].weight);
    }
    auto relabel = [&](const NcPoly& x) {
      NcPoly r;
      for (const auto& [w0, c] : x.terms()) {
        Word w = w0;
        for (auto& l : w) l.symbol = remap[static_cast<std::size_t>(l.symbol)];
        r.add(std::move(w), c);
      }
      return r;
    };
    for (const auto& r : p.relations) out.relations.push_back(relabel(r));
    for (const auto& [s, d] : p.coproduct) out.coproduct.emplace(remap[static_cast<std::size_t>(s)], relabel(d));
  }
  if (ps.size() == 1) out.name = ps.front().name;
  return out;
}

RewriteSystem::RewriteSystem(const Presentation& p) : symbols_(&p.symbols), order_(&p.symbols) {
  for (const auto& r : p.relations) {
    insert(r);
    insert(adjoint(r));
  }
  // interreduce right-hand sides
  for (std::size_t pass = 0; pass < 4; ++pass) {
    bool changed = false;
    for (auto& rule : rules_) {
      bool ex = false, lim = false;
      NcPoly nr = reduce_unbounded(rule.rhs, &ex, &lim, 1 << 20);
      if ((nr - rule.rhs).pruned().is_zero()) continue;
      rule.rhs = nr;
      changed = true;
    }
    if (!changed) break;
  }
}

void RewriteSystem::insert(NcPoly rel) {
  std::deque<NcPoly> queue{std::move(rel)};
  std::size_t guard = 0;
  while (!queue.empty()) {
    if (++guard > 100000) throw Error("rewrite system construction did not settle");
    NcPoly q = std::move(queue.front());
    queue.pop_front();
    bool ex = false, lim = false;
    NcPoly r = reduce_unbounded(q, &ex, &lim, 1 << 20).pruned();
    if (r.is_zero()) continue;
    Word lead = leading_word(r, order_);
    for (const auto& l : lead)
      if (l.leg != 0) throw Error("relations must live on a single tensor leg");
    cplx c = r.coeff(lead);
    NcPoly rhs = r;
    rhs.add(lead, -c);
    rhs *= -1.0 / c;

    // rules whose lead contains the new lead are superseded
    for (std::size_t i = 0; i < rules_.size();) {
      const Word& old = rules_[i].lead;
      bool contains = false;
      if (old.size() >= lead.size())
        for (std::size_t pos = 0; pos + lead.size() <= old.size() && !contains; ++pos)
          contains = std::equal(lead.begin(), lead.end(), old.begin() + static_cast<long>(pos));
      if (contains) {
        NcPoly back = NcPoly::word(old) - rules_[i].rhs;
        queue.push_back(std::move(back));
        rules_.erase(rules_.begin() + static_cast<long>(i));
      } else {
        ++i;
      }
    }
    rules_.push_back({std::move(lead), std::move(rhs)});
  }
}

std::optional<std::pair<std::size_t, std::size_t>> RewriteSystem::match(const Word& w) const {
  for (std::size_t pos = 0; pos < w.size(); ++pos)
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      const Word& lead = rules_[r].lead;
      if (pos + lead.size() > w.size()) continue;
      const int leg = w[pos].leg;
      bool ok = true;
      for (std::size_t i = 0; i < lead.size() && ok; ++i) {
        const Letter& x = w[pos + i];
        ok = x.leg == leg && x.symbol == lead[i].symbol && x.adjoint == lead[i].adjoint;
      }
      if (ok) return std::make_pair(r, pos);
    }
  return std::nullopt;
}

// Descending sweep: replacements only introduce smaller words, so every word
// above the cursor is already irreducible.
NcPoly RewriteSystem::reduce_unbounded(const NcPoly& p, bool* exceeded, bool* limit, int bound) const {
  std::map<Word, cplx, WordOrder> work(order_);
  for (const auto& [w, c] : p.terms()) {
    if (static_cast<int>(w.size()) > bound) *exceeded = true;
    work[w] += c;
  }
  std::size_t steps = 0;
  auto it = work.end();
  while (it != work.begin()) {
    --it;
    if (std::abs(it->second) < kPolyZero) {
      it = work.erase(it);
      continue;
    }
    auto m = match(it->first);
    if (!m) continue;
    if (++steps > kStepLimit) {
      *limit = true;
      break;
    }
    const auto [ri, pos] = *m;
    const Rule& rule = rules_[ri];
    const Word w = it->first;
    const cplx c = it->second;
    it = work.erase(it);
    const int leg = w[pos].leg;
    for (const auto& [rw, rc] : rule.rhs.terms()) {
      Word nw(w.begin(), w.begin() + static_cast<long>(pos));
      for (Letter l : rw) {
        l.leg = leg;
        nw.push_back(l);
      }
      nw.insert(nw.end(), w.begin() + static_cast<long>(pos + rule.lead.size()), w.end());
      if (static_cast<int>(nw.size()) > bound) *exceeded = true;
      work[nw] += c * rc;
    }
    // new words are all below w; resume just under it
    it = work.lower_bound(w);
  }
  NcPoly out;
  for (const auto& [w, c] : work)
    if (std::abs(c) >= kPolyZero) out.add(w, c);
  return out;
}

RewriteSystem::Result RewriteSystem::reduce(const NcPoly& p, int degree_bound) const {
  Result r;
  r.normal_form = reduce_unbounded(p, &r.bound_exceeded, &r.step_limit_hit, degree_bound);
  return r;
}

RewriteSystem::Result reduce(const NcPoly& p, const Presentation& rels, int degree_bound) {
  return RewriteSystem(rels).reduce(p, degree_bound);
}

std::vector<Implication> implies(const Presentation& rels, const std::vector<NcPoly>& candidates,
                                 int degree_bound) {
  RewriteSystem rs(rels);
  std::vector<Implication> out;
  for (const auto& c : candidates) {
    auto r = rs.reduce(c, degree_bound);
    Implication im;
    im.remainder = r.normal_form;
    im.bound_exceeded = r.bound_exceeded;
    im.verdict = r.normal_form.is_zero() ? Verdict::ReducedToZero : Verdict::NotReduced;
    out.push_back(std::move(im));
  }
  return out;
}

NcPoly apply_coproduct(const Presentation& p, const NcPoly& x, int leg) {
  NcPoly out;
  for (const auto& [w, c] : x.terms()) {
    NcPoly term = NcPoly::constant(c);
    for (const auto& l : w) {
      if (l.leg < leg) {
        term = term * NcPoly::letter(l.symbol, l.adjoint, l.leg);
      } else if (l.leg > leg) {
        term = term * NcPoly::letter(l.symbol, l.adjoint, l.leg + 1);
      } else {
        auto it = p.coproduct.find(l.symbol);
        if (it == p.coproduct.end()) throw Error("missing coproduct rule for " + p.symbols[l.symbol].name);
        NcPoly d = it->second.shift_legs(leg);
        term = term * (l.adjoint ? adjoint(d) : d);
      }
    }
    out += term;
  }
  return out;
}

CoproductReport check_coproduct(const Presentation& pres, int degree_bound) {
  for (int s = 0; s < pres.symbols.size(); ++s)
    if (!pres.coproduct.count(s)) throw Error("missing coproduct rule for " + pres.symbols[s].name);
  RewriteSystem rs(pres);
  CoproductReport rep;
  for (const auto& [s, d] : pres.coproduct) {
    NcPoly diff = apply_coproduct(pres, d, 0) - apply_coproduct(pres, d, 1);
    auto r = rs.reduce(diff.pruned(), degree_bound);
    rep.bound_exceeded |= r.bound_exceeded;
    if (!r.normal_form.is_zero()) {
      rep.coassociative = false;
      rep.coassociativity_failures.push_back(pres.symbols[s].name);
    }
  }
  std::vector<NcPoly> all;
  for (const auto& r : pres.relations) {
    all.push_back(r);
    all.push_back(adjoint(r));
  }
  for (const auto& rel : all) {
    auto r = rs.reduce(apply_coproduct(pres, rel, 0).pruned(), degree_bound);
    rep.bound_exceeded |= r.bound_exceeded;
    if (!r.normal_form.is_zero()) {
      rep.hopf_ideal = false;
      rep.ideal_failures.push_back(rel.to_string(pres.symbols));
    }
  }
  return rep;
}

Letter parse_letter(const SymbolTable& syms, const std::string& token, int leg) {
  bool adj = !token.empty() && token.back() == '*';
  std::string name = adj ? token.substr(0, token.size() - 1) : token;
  return Letter{syms.require(name), adj, leg};
}

}  // namespace qiso
