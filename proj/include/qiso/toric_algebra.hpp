// SPDX-License-Identifier: Apache-2.0
//
// Direct sums of twisted torus algebras at finite Fourier truncation.
//
// Each summand is generated by unitaries U_1..U_d with U_j U_k = lambda_jk U_k U_j.
// Elements are finite sums of normal-ordered monomials U_1^{m_1} ... U_d^{m_d}.
#pragma once

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qiso/phase.hpp"

namespace qiso {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a result would need monomials outside the allowed radius.
struct TruncationError : Error {
  using Error::Error;
};

struct ToricSummand {
  int rank = 1;
  std::vector<Phase> phases;  // row-major rank x rank, lambda_jk

  const Phase& phase(int j, int k) const { return phases[static_cast<std::size_t>(j * rank + k)]; }
};

class AlgebraSpec {
 public:
  explicit AlgebraSpec(std::vector<ToricSummand> summands);

  static AlgebraSpec circle();
  /// Rank-2 torus with U V = lambda V U.
  static AlgebraSpec torus(const Phase& lambda);
  static AlgebraSpec commutative_torus(int rank);
  static AlgebraSpec direct_sum(const std::vector<AlgebraSpec>& parts);

  const std::vector<ToricSummand>& summands() const { return summands_; }
  int num_summands() const { return static_cast<int>(summands_.size()); }
  int rank(int s) const { return summands_[static_cast<std::size_t>(s)].rank; }
  const ToricSummand& summand(int s) const { return summands_[static_cast<std::size_t>(s)]; }
  /// Weight of each summand in the trace (equal weights).
  double summand_weight() const { return 1.0 / static_cast<double>(summands_.size()); }

  bool operator==(const AlgebraSpec& o) const;

 private:
  std::vector<ToricSummand> summands_;
};

using SpecPtr = std::shared_ptr<const AlgebraSpec>;

struct Monomial {
  int summand = 0;
  std::vector<int> exponents;

  int radius() const;  // max-norm of the exponent vector
  int degree() const;  // l1-norm of the exponent vector
  auto operator<=>(const Monomial&) const = default;
};

Monomial operator+(const Monomial& a, const Monomial& b);
Monomial operator-(const Monomial& a);
std::string to_string(const Monomial& m);

/// Phase picked up when normal-ordering U^a U^b into U^{a+b}.
Phase product_phase(const ToricSummand& s, const std::vector<int>& a, const std::vector<int>& b);
/// Phase of (U^a)^* relative to U^{-a}.
Phase star_phase(const ToricSummand& s, const std::vector<int>& a);

class AlgebraElement {
 public:
  using TermMap = std::map<Monomial, cplx>;

  AlgebraElement(SpecPtr spec, int truncation);

  static AlgebraElement unit(SpecPtr spec, int truncation);
  static AlgebraElement monomial(SpecPtr spec, int truncation, Monomial m, cplx c = 1.0);

  const SpecPtr& spec() const { return spec_; }
  int truncation() const { return truncation_; }
  /// Largest max-norm among stored monomials (0 for the zero element).
  int radius() const;
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  cplx coeff(const Monomial& m) const;

  /// Adds c * m. Throws TruncationError if m lies outside the truncation.
  void add(const Monomial& m, cplx c);
  AlgebraElement with_truncation(int truncation) const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(cplx c);

  /// Drops coefficients with modulus below tol.
  AlgebraElement pruned(double tol) const;
  double max_abs() const;

 private:
  SpecPtr spec_;
  int truncation_;
  TermMap terms_;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator*(cplx c, AlgebraElement a);

/// Normal-ordered product. The result is truncated at buffer_radius, which must
/// cover radius(x) + radius(y).
AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y, int buffer_radius);
/// multiply() with buffer max(truncations, radius(x) + radius(y)).
AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);

AlgebraElement star(const AlgebraElement& x);
cplx trace(const AlgebraElement& x);
/// tau(x^* y).
cplx gns_inner(const AlgebraElement& x, const AlgebraElement& y);
double gns_norm(const AlgebraElement& x);

/// Monomials of every summand with max-norm at most `radius`, in a fixed order,
/// together with orthonormal GNS coordinates.
class MonomialBasis {
 public:
  MonomialBasis(SpecPtr spec, int radius);

  const SpecPtr& spec() const { return spec_; }
  int radius() const { return radius_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  /// Index of m, or -1 if outside the basis.
  long index_of(const Monomial& m) const;

  /// GNS-orthonormal coordinates of x (throws if x has support outside).
  Eigen::VectorXcd coordinates(const AlgebraElement& x) const;
  AlgebraElement element(const Eigen::VectorXcd& v, double tol = 0.0) const;
  /// The orthonormal basis vector sitting on monomial i.
  AlgebraElement basis_element(std::size_t i) const;

 private:
  SpecPtr spec_;
  int radius_;
  double scale_;  // sqrt of the summand trace weight
  std::vector<Monomial> monomials_;
  std::map<Monomial, long> index_;
};

/// All exponent vectors of length d with max-norm at most r, lexicographic.
std::vector<std::vector<int>> lattice_box(int d, int r);

}  // namespace qiso
