// SPDX-License-Identifier: Apache-2.0
//
// Quantum families of smooth isometries: symbolic derivation of the relations
// an action ansatz must satisfy, and numerical verification of concrete
// matrix-realized actions.
#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "qiso/presentation.hpp"
#include "qiso/spectral_triple.hpp"
#include "qiso/tensor_element.hpp"

namespace qiso {

/// "U" for rank 1, "U","V" for rank 2, "U1".."Ud" otherwise.
std::string generator_name(int rank, int j);

/// alpha(g) = sum_b b (x) c_{g,b} for each generator g of a single-summand model.
struct ActionAnsatz {
  struct Term {
    Monomial monomial;
    NcPoly coefficient;  // usually a single symbol
  };

  SymbolTable symbols;
  std::vector<std::vector<Term>> generators;  // indexed by generator
  std::vector<std::string> forced_zero;       // symbols removed by the Laplacian filter

  /// alpha(g) = sum over every monomial b with max-norm <= radius of
  /// b (x) <prefix>_<b>, one fresh symbol per (generator, b).
  static ActionAnsatz full(const SpecPtr& spec, int radius, const std::vector<std::string>& prefixes);

  int num_generators() const { return static_cast<int>(generators.size()); }
};

/// Deletes every term whose monomial is not in the generator's L-eigenspace.
ActionAnsatz laplacian_filter(const ActionAnsatz& ansatz, const Laplacian& L);

/// Expands the unital *-homomorphism and L-commutation constraints on all
/// words of length 2..check_degree in the generators and their adjoints and
/// returns the coefficient relations, deduplicated and made monic.
std::vector<NcPoly> derive_relations(const ActionAnsatz& ansatz, const SpectralModel& model, const Laplacian& L,
                                     int check_degree);

/// Dense matrix realization of the coefficient symbols.
struct Realization {
  int dim = 1;
  std::map<std::string, Eigen::MatrixXcd> matrices;

  const Eigen::MatrixXcd& at(const std::string& name) const;
};

/// Evaluates a polynomial on `legs` tensor legs; leg j uses the j-th Kronecker factor.
Eigen::MatrixXcd evaluate(const NcPoly& p, const SymbolTable& syms, const Realization& r, int legs = 1);

struct ConcreteAction {
  ActionAnsatz ansatz;
  Realization realization;

  /// alpha on the generator g as an element of A (x) M_dim.
  TensorElement generator_image(const SpecPtr& spec, int g) const;
};

/// Extends alpha multiplicatively to monomials (normal order) and linearly to elements.
class ActionEvaluator {
 public:
  ActionEvaluator(const ConcreteAction& action, SpecPtr spec);

  const TensorElement& of_monomial(const Monomial& m);
  TensorElement of(const AlgebraElement& x);
  int dim() const { return dim_; }

 private:
  const TensorElement& power(int g, int e);

  SpecPtr spec_;
  int dim_;
  std::vector<TensorElement> gen_;
  std::map<std::pair<int, int>, TensorElement> powers_;
  std::map<Monomial, TensorElement> cache_;
};

struct VerificationReport {
  double homomorphism = 0.0;
  double star = 0.0;
  double laplacian_commutation = 0.0;
  double trace_invariance = 0.0;
  double module_unitarity = 0.0;
  double density = 0.0;
  double tolerance = 1e-8;
  int eigenspaces_checked = 0;
  int eigenvectors_checked = 0;
  int products_checked = 0;

  std::vector<std::pair<std::string, double>> residuals() const;
  bool pass() const;
};

VerificationReport verify_concrete(const ConcreteAction& action, const SpectralModel& model, const LaplacianBuild& build,
                                   double tolerance = 1e-8);

/// Gram matrix of {alpha(e_ij)} in the S-valued inner product minus the Gram
/// matrix of {e_ij} (x) 1, over the checked eigenbasis.
double module_isometry_residual(const ConcreteAction& action, const SpectralModel& model, const LaplacianBuild& build);

/// Residual of (alpha (x) id) alpha - (id (x) Delta) alpha on generators, with
/// Delta taken from the presentation's coproduct rules and realized by Kronecker products.
double verify_coaction_square(const ConcreteAction& action, const SpecPtr& spec, const Presentation& pres);

/// Eigenspaces on which concrete checks run: complete and of max-norm radius
/// at most `radius`.
std::vector<int> checked_eigenspaces(const LaplacianData& data, int radius);

}  // namespace qiso
