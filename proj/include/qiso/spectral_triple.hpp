// SPDX-License-Identifier: Apache-2.0
//
// Spectral triples on toric algebras: the Dirac structure, one-forms,
// the Laplacian L = -d^* d and its eigendata.
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "qiso/toric_algebra.hpp"

namespace qiso {

/// D acts on H0 (x) C^k as a k x k block matrix; block (r, c) multiplies the
/// monomial U^m by f_rc(m) = sum_j w_rcj m_j.
struct DiracStructure {
  std::string kind;  // "circle" or "torus2"
  int multiplicity = 1;
  std::vector<std::vector<cplx>> weights;  // [r * k + c] -> per-generator weights, empty for a zero block

  static DiracStructure circle();
  static DiracStructure torus2();

  cplx block_symbol(int r, int c, const std::vector<int>& m) const;
};

struct SpectralModel {
  SpecPtr spec;
  int truncation = 0;
  DiracStructure dirac;

  static SpectralModel circle(int truncation);
  static SpectralModel torus(const Phase& lambda, int truncation);
  /// Direct sum of `copies` circles sharing the circle Dirac operator.
  static SpectralModel disjoint_circles(int copies, int truncation);

  /// Throws if D is not self-adjoint or does not fit the algebra.
  void validate() const;
  int k() const { return dirac.multiplicity; }
};

/// Inner radius on which an identity involving monomials of total degree
/// `degree` can be asserted without touching the truncation boundary.
int safe_radius(int truncation, int degree);

/// k x k matrix of algebra elements, acting on H0 (x) C^k by left multiplication.
class OneForm {
 public:
  OneForm(SpecPtr spec, int k, int truncation);

  int k() const { return k_; }
  AlgebraElement& block(int r, int c) { return blocks_[static_cast<std::size_t>(r * k_ + c)]; }
  const AlgebraElement& block(int r, int c) const { return blocks_[static_cast<std::size_t>(r * k_ + c)]; }
  const SpecPtr& spec() const { return spec_; }
  int radius() const;
  bool is_zero() const;

  OneForm& operator+=(const OneForm& o);
  OneForm& operator-=(const OneForm& o);
  OneForm& operator*=(cplx c);

 private:
  SpecPtr spec_;
  int k_;
  std::vector<AlgebraElement> blocks_;
};

OneForm operator+(OneForm a, const OneForm& b);
OneForm operator-(OneForm a, const OneForm& b);
/// a * eta and eta * b, blockwise.
OneForm operator*(const AlgebraElement& a, const OneForm& eta);
OneForm operator*(const OneForm& eta, const AlgebraElement& b);
/// Operator product of two k x k element matrices.
OneForm operator*(const OneForm& x, const OneForm& y);
OneForm adjoint(const OneForm& eta);

/// d_D(a) = [D, a]. Throws TruncationError if a exceeds the model truncation.
OneForm d_D(const SpectralModel& model, const AlgebraElement& a);
/// [D, a] with no radius check; used to probe monomials just outside the box.
OneForm commutator_with_dirac(const SpectralModel& model, const AlgebraElement& a);

/// (tr/k (x) tau)(eta^* eta').
cplx oneform_inner(const OneForm& eta, const OneForm& eta2);

/// The truncated Laplacian as a matrix in the orthonormal monomial basis.
class Laplacian {
 public:
  Laplacian(MonomialBasis basis, Eigen::MatrixXcd matrix) : basis_(std::move(basis)), matrix_(std::move(matrix)) {}

  const MonomialBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  AlgebraElement apply(const AlgebraElement& x) const;
  AlgebraElement operator()(const AlgebraElement& x) const { return apply(x); }

 private:
  MonomialBasis basis_;
  Eigen::MatrixXcd matrix_;
};

struct Eigenspace {
  double eigenvalue = 0.0;
  std::vector<AlgebraElement> basis;  // GNS-orthonormal
  Eigen::MatrixXcd coordinates;       // columns: basis vectors in monomial coordinates
  /// True when no monomial outside the truncation box carries this eigenvalue
  /// (or anything closer to 0), so the eigenspace is the untruncated one.
  bool complete = false;

  int multiplicity() const { return static_cast<int>(basis.size()); }
};

struct LaplacianData {
  std::vector<Eigenspace> spaces;  // eigenvalues descending: 0 first
  Eigen::VectorXd eigenvalues;     // all eigenvalues, descending, with multiplicity
  Eigen::MatrixXcd eigenvectors;   // matching columns
  double grouping_tolerance = 1e-7;

  /// Index of the eigenspace containing eigenvalue lambda, or -1.
  int find(double lambda) const;
  std::vector<int> multiplicities() const;
};

struct LaplacianBuild {
  Laplacian L;
  LaplacianData data;
};

/// Assembles L from the Gram form <x, L y> = -<d x, d y> on every monomial of
/// the model's truncation box and decomposes it.
LaplacianBuild build_laplacian(const SpectralModel& model, double grouping_tolerance = 1e-7);

/// d_D^*(d_D(b) c) = 1/2 (b L(c) - L(b) c - L(bc)).
AlgebraElement dstar_formula(const Laplacian& L, const AlgebraElement& b, const AlgebraElement& c);
/// The same expression with the opposite overall sign, -1/2 (b L(c) - L(b) c - L(bc)).
AlgebraElement dstar_formula_negated(const Laplacian& L, const AlgebraElement& b, const AlgebraElement& c);
/// L(xy) - L(x) y + x L(y).
AlgebraElement psi(const Laplacian& L, const AlgebraElement& x, const AlgebraElement& y);

/// exp(t L) x, computed in the eigenbasis.
AlgebraElement heat_semigroup(const LaplacianData& data, const MonomialBasis& basis, double t,
                              const AlgebraElement& x);

struct AdmissibilityReport {
  bool compact_resolvent = true;  // (ii): finite matrix
  double invariance_residual = 0.0;   // (iii)
  double eigenvector_residual = 0.0;  // (iv)
  int kernel_dimension = 0;           // (v)
  bool kernel_spanned_by_unit = false;
  bool density = true;  // (vi): exact at truncation
  double self_adjoint_residual = 0.0;
  double max_eigenvalue = 0.0;
  double star_compatibility_residual = 0.0;  // ||L(x^*) - L(x)^*||
  double tolerance = 1e-9;

  bool connected() const { return kernel_dimension == 1 && kernel_spanned_by_unit; }
  bool all_pass() const;
};

AdmissibilityReport check_admissibility(const SpectralModel& model, const LaplacianBuild& build,
                                        double tolerance = 1e-9);

}  // namespace qiso
