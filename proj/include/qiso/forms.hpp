// SPDX-License-Identifier: Apache-2.0
//
// Noncommutative differential forms over a finite, action-invariant set of
// Laplacian eigenvectors, the operator D' = d + d^*, and the unitaries induced
// on forms by a quantum family of isometries.
//
// An n-form word a0 d(a1) ... d(an) is realized as the operator
// a0 [D, a1] ... [D, an]; H^n is the span of these operators modulo
// d(ker pi) in degree n - 1, so that d is well defined and d^2 = 0.
#pragma once

#include <Eigen/Dense>

#include <map>
#include <vector>

#include "qiso/isometry.hpp"
#include "qiso/spectral_triple.hpp"

namespace qiso {

using FormWord = std::vector<Monomial>;  // (a0, a1, ..., an)

/// d(a0 d(a1) ... d(an)) = 1 d(a0) d(a1) ... d(an).
FormWord d_word(const FormWord& w);

struct FormsOptions {
  int max_degree = 2;
  /// Words use monomials from complete eigenspaces with |eigenvalue| <= max_energy.
  double max_energy = 4.0;
  /// Singular values below rank_tolerance * largest are treated as zero.
  double rank_tolerance = 1e-9;
};

struct FormsSpace {
  int degree = 0;
  std::vector<FormWord> words;    // spanning words
  Eigen::MatrixXcd image;         // ambient coordinates of each word (columns)
  Eigen::MatrixXcd junk;          // orthonormal basis of d(ker pi) from degree - 1
  Eigen::MatrixXcd basis;         // orthonormal basis of H^n, orthogonal to junk
  Eigen::MatrixXcd coordinates;   // class of each word in `basis`
  std::vector<int> representatives;  // words whose classes form a basis
  Eigen::MatrixXcd representative_inverse;  // inverse of coordinates restricted to representatives
  double gram_min_eigenvalue = 0.0;

  int dim() const { return static_cast<int>(basis.cols()); }
};

class FormsComplex {
 public:
  FormsComplex(const SpectralModel& model, const LaplacianBuild& build, const FormsOptions& options = {});

  const SpectralModel& model() const { return model_; }
  const std::vector<Monomial>& letters() const { return letters_; }
  int max_degree() const { return static_cast<int>(spaces_.size()) - 1; }
  const FormsSpace& space(int n) const { return spaces_.at(static_cast<std::size_t>(n)); }
  int ambient_dim() const { return static_cast<int>(index_.size()) * k_ * k_; }

  /// Ambient coordinates of the operator c * a0 [D,a1] ... [D,an].
  Eigen::VectorXcd ambient(const FormWord& w, cplx c = 1.0) const;
  /// Ambient index of block (r, c) at monomial m, or -1.
  long ambient_index(const Monomial& m, int r, int c) const;

  /// d : H^n -> H^{n+1} in orthonormal bases.
  const Eigen::MatrixXcd& d(int n) const { return d_.at(static_cast<std::size_t>(n)); }
  /// Offsets of each degree inside the direct sum.
  std::vector<int> offsets() const;
  int total_dim() const;
  /// d + d^* on the direct sum of H^0 .. H^max.
  Eigen::MatrixXcd dprime() const;

 private:
  SpectralModel model_;
  int k_;
  std::vector<Monomial> letters_;
  std::map<Monomial, int> index_;
  std::vector<FormsSpace> spaces_;
  std::vector<Eigen::MatrixXcd> d_;
};

/// U^(n) on H^n (x) C^dim, from alpha(a0) (d (x) id)alpha(a1) ... applied to
/// representative words. Rows and columns are indexed by (basis index) * dim + (vector index).
struct InducedUnitary {
  Eigen::MatrixXcd matrix;
  double leakage = 0.0;           // image components outside H^n
  double well_definedness = 0.0;  // non-representative words vs. their expansion
};

InducedUnitary build_Un(const ConcreteAction& action, const FormsComplex& forms, int n);

struct EquivarianceReport {
  std::vector<double> unitarity;  // per degree
  double leakage = 0.0;
  double well_definedness = 0.0;
  double commutation = 0.0;       // || U (D' (x) 1) - (D' (x) 1) U ||
  double d_squared = 0.0;
  double dprime_self_adjoint = 0.0;
  std::vector<int> dimensions;

  bool pass(double tol) const;
};

EquivarianceReport check_equivariance(const ConcreteAction& action, const FormsComplex& forms);

}  // namespace qiso
