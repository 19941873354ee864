// SPDX-License-Identifier: Apache-2.0
#include "qiso/nc_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qiso/toric_algebra.hpp"

namespace qiso {

int SymbolTable::add(const std::string& name, int weight) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  if (name.empty() || name.back() == '*') throw Error("invalid symbol name '" + name + "'");
  int id = size();
  symbols_.push_back({name, weight});
  index_.emplace(name, id);
  return id;
}

int SymbolTable::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int SymbolTable::require(const std::string& name) const {
  int i = find(name);
  if (i < 0) throw Error("unknown symbol '" + name + "'");
  return i;
}

NcPoly NcPoly::constant(cplx c) {
  NcPoly p;
  p.add({}, c);
  return p;
}

NcPoly NcPoly::letter(int symbol, bool adjoint, int leg) {
  NcPoly p;
  p.add({Letter{symbol, adjoint, leg}}, 1.0);
  return p;
}

NcPoly NcPoly::word(Word w, cplx c) {
  NcPoly p;
  p.add(canonical_word(std::move(w)), c);
  return p;
}

cplx NcPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? cplx{} : it->second;
}

int NcPoly::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

int NcPoly::max_leg() const {
  int l = -1;
  for (const auto& [w, c] : terms_)
    for (const auto& x : w) l = std::max(l, x.leg);
  return l;
}

void NcPoly::add(Word w, cplx c) {
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(std::move(w), c);
  if (!inserted) {
    it->second += c;
    if (std::abs(it->second) < 1e-15) terms_.erase(it);
  }
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

NcPoly& NcPoly::operator*=(cplx c) {
  if (c == cplx{}) terms_.clear();
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

NcPoly NcPoly::pruned(double tol) const {
  NcPoly r;
  for (const auto& [w, c] : terms_)
    if (std::abs(c) >= tol) r.terms_.emplace(w, c);
  return r;
}

double NcPoly::max_abs() const {
  double m = 0.0;
  for (const auto& [w, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

NcPoly NcPoly::on_leg(int leg) const {
  NcPoly r;
  for (const auto& [w0, c] : terms_) {
    Word w = w0;
    for (auto& x : w) x.leg = leg;
    r.add(std::move(w), c);
  }
  return r;
}

NcPoly NcPoly::shift_legs(int offset) const {
  NcPoly r;
  for (const auto& [w0, c] : terms_) {
    Word w = w0;
    for (auto& x : w) x.leg += offset;
    r.add(std::move(w), c);
  }
  return r;
}

std::string word_to_string(const Word& w, const SymbolTable& syms) {
  if (w.empty()) return "1";
  std::ostringstream os;
  int leg = w.front().leg;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << (w[i].leg != leg ? " (x) " : " ");
    leg = w[i].leg;
    os << syms[w[i].symbol].name << (w[i].adjoint ? "*" : "");
  }
  return os.str();
}

std::string NcPoly::to_string(const SymbolTable& syms) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (!w.empty()) os << " " << word_to_string(w, syms);
  }
  return os.str();
}

Word canonical_word(Word w) {
  std::stable_sort(w.begin(), w.end(), [](const Letter& a, const Letter& b) { return a.leg < b.leg; });
  return w;
}

Word multiply_words(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return canonical_word(std::move(w));
}

NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
NcPoly operator*(cplx c, NcPoly a) { return a *= c; }

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
  NcPoly r;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) r.add(multiply_words(wa, wb), ca * cb);
  return r;
}

NcPoly adjoint(const NcPoly& p) {
  NcPoly r;
  for (const auto& [w, c] : p.terms()) {
    Word v(w.rbegin(), w.rend());
    for (auto& x : v) x.adjoint = !x.adjoint;
    r.add(canonical_word(std::move(v)), std::conj(c));
  }
  return r;
}

int WordOrder::weight(const Word& w) const {
  int s = 0;
  for (const auto& x : w) s += (*syms_)[x.symbol].weight;
  return s;
}

bool WordOrder::less(const Word& a, const Word& b) const {
  int wa = weight(a), wb = weight(b);
  if (wa != wb) return wa < wb;
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.leg != y.leg) return x.leg > y.leg;
    if (x.adjoint != y.adjoint) return !x.adjoint;
    if (x.symbol != y.symbol) return x.symbol < y.symbol;
  }
  return false;
}

Word leading_word(const NcPoly& p, const WordOrder& order) {
  if (p.is_zero()) throw Error("leading word of zero polynomial");
  const Word* best = nullptr;
  for (const auto& [w, c] : p.terms())
    if (!best || order.less(*best, w)) best = &w;
  return *best;
}

}  // namespace qiso
