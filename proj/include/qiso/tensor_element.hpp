// SPDX-License-Identifier: Apache-2.0
//
// Elements of A (x) S where S is realized as dim x dim complex matrices.
#pragma once

#include <Eigen/Dense>

#include <map>

#include "qiso/spectral_triple.hpp"
#include "qiso/toric_algebra.hpp"

namespace qiso {

class TensorElement {
 public:
  using TermMap = std::map<Monomial, Eigen::MatrixXcd>;

  TensorElement(SpecPtr spec, int dim) : spec_(std::move(spec)), dim_(dim) {}

  /// x (x) 1
  static TensorElement embed(const AlgebraElement& x, int dim);
  static TensorElement unit(SpecPtr spec, int dim);

  const SpecPtr& spec() const { return spec_; }
  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int radius() const;

  /// Adds m (x) s.
  void add(const Monomial& m, const Eigen::MatrixXcd& s);
  Eigen::MatrixXcd coeff(const Monomial& m) const;

  TensorElement& operator+=(const TensorElement& o);
  TensorElement& operator-=(const TensorElement& o);
  TensorElement& operator*=(cplx c);

  /// Right multiplication by 1 (x) s.
  TensorElement times_right(const Eigen::MatrixXcd& s) const;
  /// Drops terms whose coefficient has Frobenius norm at most tol.
  TensorElement pruned(double tol = 1e-13) const;
  /// sqrt(sum_m ||X_m||_F^2) with the GNS weight of each summand.
  double norm() const;

 private:
  SpecPtr spec_;
  int dim_;
  TermMap terms_;
};

TensorElement operator+(TensorElement a, const TensorElement& b);
TensorElement operator-(TensorElement a, const TensorElement& b);
TensorElement operator*(cplx c, TensorElement a);
/// Product in A (x) S; the result is pruned.
TensorElement operator*(const TensorElement& x, const TensorElement& y);
TensorElement star(const TensorElement& x);

/// (tau (x) id)(X).
Eigen::MatrixXcd slice_trace(const TensorElement& x);
/// S-valued inner product (tau (x) id)(X^* Y).
Eigen::MatrixXcd module_inner(const TensorElement& x, const TensorElement& y);
/// (L (x) id)(X); X must be supported inside the Laplacian's basis.
TensorElement apply_laplacian(const Laplacian& L, const TensorElement& x);

/// k x k block matrix of tensor elements: S-valued forms.
struct TensorForm {
  int k = 1;
  std::vector<TensorElement> blocks;

  TensorForm(SpecPtr spec, int k, int dim);
  TensorElement& block(int r, int c) { return blocks[static_cast<std::size_t>(r * k + c)]; }
  const TensorElement& block(int r, int c) const { return blocks[static_cast<std::size_t>(r * k + c)]; }
};

TensorForm operator*(const TensorForm& x, const TensorForm& y);
TensorForm operator*(const TensorElement& a, const TensorForm& x);
/// (d_D (x) id)(X).
TensorForm dirac_commutator(const SpectralModel& model, const TensorElement& x);

}  // namespace qiso
