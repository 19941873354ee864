// SPDX-License-Identifier: Apache-2.0
//
// Noncommutative *-polynomials in abstract generator symbols.
//
// Letters carry a tensor leg, so the same type represents elements of S, S (x) S
// and S (x) S (x) S. Letters on different legs commute; words are kept with
// legs in ascending order.
#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace qiso {

using cplx = std::complex<double>;

inline constexpr double kPolyZero = 1e-10;

struct Symbol {
  std::string name;
  int weight = 1;  // used by the rewriting order
};

class SymbolTable {
 public:
  int add(const std::string& name, int weight = 1);
  /// Index of `name`, or -1.
  int find(const std::string& name) const;
  int require(const std::string& name) const;
  const Symbol& operator[](int i) const { return symbols_[static_cast<std::size_t>(i)]; }
  Symbol& operator[](int i) { return symbols_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(symbols_.size()); }
  const std::vector<Symbol>& symbols() const { return symbols_; }

 private:
  std::vector<Symbol> symbols_;
  std::map<std::string, int> index_;
};

struct Letter {
  int symbol = 0;
  bool adjoint = false;
  int leg = 0;

  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

class NcPoly {
 public:
  using TermMap = std::map<Word, cplx>;

  NcPoly() = default;
  static NcPoly constant(cplx c);
  static NcPoly letter(int symbol, bool adjoint = false, int leg = 0);
  static NcPoly word(Word w, cplx c = 1.0);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  cplx coeff(const Word& w) const;
  int degree() const;   // longest word
  int max_leg() const;  // -1 for a constant or zero

  void add(Word w, cplx c);

  NcPoly& operator+=(const NcPoly& o);
  NcPoly& operator-=(const NcPoly& o);
  NcPoly& operator*=(cplx c);

  /// Drops coefficients with modulus below tol.
  NcPoly pruned(double tol = kPolyZero) const;
  double max_abs() const;

  /// Moves every letter to leg `leg` (or shifts legs by `offset`).
  NcPoly on_leg(int leg) const;
  NcPoly shift_legs(int offset) const;

  std::string to_string(const SymbolTable& syms) const;

 private:
  TermMap terms_;
};

/// Concatenation followed by sorting letters stably by leg.
Word multiply_words(const Word& a, const Word& b);
Word canonical_word(Word w);

NcPoly operator+(NcPoly a, const NcPoly& b);
NcPoly operator-(NcPoly a, const NcPoly& b);
NcPoly operator*(cplx c, NcPoly a);
NcPoly operator*(const NcPoly& a, const NcPoly& b);
NcPoly adjoint(const NcPoly& p);

/// Scales p so that its largest word (in `order`) has coefficient 1.
template <typename Order>
NcPoly monic(const NcPoly& p, const Order& order);

std::string word_to_string(const Word& w, const SymbolTable& syms);

/// Graded order: total symbol weight, then length, then lexicographic with
/// plain symbols before adjoints and lower symbol index first.
class WordOrder {
 public:
  explicit WordOrder(const SymbolTable* syms) : syms_(syms) {}
  int weight(const Word& w) const;
  bool less(const Word& a, const Word& b) const;
  bool operator()(const Word& a, const Word& b) const { return less(a, b); }

 private:
  const SymbolTable* syms_;
};

/// Largest word of a nonzero polynomial.
Word leading_word(const NcPoly& p, const WordOrder& order);

template <typename Order>
NcPoly monic(const NcPoly& p, const Order& order) {
  if (p.is_zero()) return p;
  return (1.0 / p.coeff(leading_word(p, order))) * p;
}

}  // namespace qiso
