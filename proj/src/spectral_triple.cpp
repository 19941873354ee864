// SPDX-License-Identifier: Apache-2.0
#include "qiso/spectral_triple.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace qiso {

DiracStructure DiracStructure::circle() {
  DiracStructure d;
  d.kind = "circle";
  d.multiplicity = 1;
  d.weights = {{cplx{1.0, 0.0}}};
  return d;
}

// D = [[0, d1 + i d2], [d1 - i d2, 0]]
DiracStructure DiracStructure::torus2() {
  DiracStructure d;
  d.kind = "torus2";
  d.multiplicity = 2;
  d.weights = {{}, {cplx{1.0, 0.0}, cplx{0.0, 1.0}}, {cplx{1.0, 0.0}, cplx{0.0, -1.0}}, {}};
  return d;
}

cplx DiracStructure::block_symbol(int r, int c, const std::vector<int>& m) const {
  const auto& w = weights[static_cast<std::size_t>(r * multiplicity + c)];
  cplx s{};
  for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * static_cast<double>(m[j]);
  return s;
}

SpectralModel SpectralModel::circle(int truncation) {
  return {std::make_shared<const AlgebraSpec>(AlgebraSpec::circle()), truncation, DiracStructure::circle()};
}

SpectralModel SpectralModel::torus(const Phase& lambda, int truncation) {
  return {std::make_shared<const AlgebraSpec>(AlgebraSpec::torus(lambda)), truncation, DiracStructure::torus2()};
}

SpectralModel SpectralModel::disjoint_circles(int copies, int truncation) {
  std::vector<AlgebraSpec> parts(static_cast<std::size_t>(copies), AlgebraSpec::circle());
  return {std::make_shared<const AlgebraSpec>(AlgebraSpec::direct_sum(parts)), truncation, DiracStructure::circle()};
}

void SpectralModel::validate() const {
  if (!spec) throw Error("model without algebra");
  if (truncation < 1) throw Error("model truncation must be positive");
  const int kk = dirac.multiplicity;
  if (kk < 1 || dirac.weights.size() != static_cast<std::size_t>(kk * kk)) throw Error("malformed Dirac structure");
  for (int s = 0; s < spec->num_summands(); ++s)
    for (const auto& w : dirac.weights)
      if (!w.empty() && static_cast<int>(w.size()) != spec->rank(s))
        throw Error("Dirac weights do not match summand rank " + std::to_string(spec->rank(s)));
  for (int r = 0; r < kk; ++r)
    for (int c = 0; c < kk; ++c) {
      const auto& a = dirac.weights[static_cast<std::size_t>(r * kk + c)];
      const auto& b = dirac.weights[static_cast<std::size_t>(c * kk + r)];
      std::size_t n = std::max(a.size(), b.size());
      for (std::size_t j = 0; j < n; ++j) {
        cplx x = j < a.size() ? a[j] : cplx{};
        cplx y = j < b.size() ? b[j] : cplx{};
        if (std::abs(x - std::conj(y)) > 1e-14) throw Error("Dirac operator is not self-adjoint");
      }
    }
}

int safe_radius(int truncation, int degree) { return std::max(0, truncation - degree); }

OneForm::OneForm(SpecPtr spec, int k, int truncation) : spec_(spec), k_(k) {
  blocks_.assign(static_cast<std::size_t>(k * k), AlgebraElement(spec, truncation));
}

int OneForm::radius() const {
  int r = 0;
  for (const auto& b : blocks_) r = std::max(r, b.radius());
  return r;
}

bool OneForm::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const AlgebraElement& b) { return b.is_zero(); });
}

OneForm& OneForm::operator+=(const OneForm& o) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += o.blocks_[i];
  return *this;
}

OneForm& OneForm::operator-=(const OneForm& o) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= o.blocks_[i];
  return *this;
}

OneForm& OneForm::operator*=(cplx c) {
  for (auto& b : blocks_) b *= c;
  return *this;
}

OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }

OneForm operator*(const AlgebraElement& a, const OneForm& eta) {
  OneForm r(eta.spec(), eta.k(), 0);
  for (int i = 0; i < eta.k(); ++i)
    for (int j = 0; j < eta.k(); ++j) r.block(i, j) = a * eta.block(i, j);
  return r;
}

OneForm operator*(const OneForm& eta, const AlgebraElement& b) {
  OneForm r(eta.spec(), eta.k(), 0);
  for (int i = 0; i < eta.k(); ++i)
    for (int j = 0; j < eta.k(); ++j) r.block(i, j) = eta.block(i, j) * b;
  return r;
}

OneForm operator*(const OneForm& x, const OneForm& y) {
  const int k = x.k();
  OneForm r(x.spec(), k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        if (x.block(i, l).is_zero() || y.block(l, j).is_zero()) continue;
        r.block(i, j) += x.block(i, l) * y.block(l, j);
      }
  return r;
}

OneForm adjoint(const OneForm& eta) {
  OneForm r(eta.spec(), eta.k(), 0);
  for (int i = 0; i < eta.k(); ++i)
    for (int j = 0; j < eta.k(); ++j) r.block(i, j) = star(eta.block(j, i));
  return r;
}

// [D, L_a] U^p = (f(m + p) - f(p)) a U^p = f(m) a U^p since f is linear in m.
OneForm commutator_with_dirac(const SpectralModel& model, const AlgebraElement& a) {
  const int k = model.k();
  OneForm r(a.spec(), k, a.truncation());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (model.dirac.weights[static_cast<std::size_t>(i * k + j)].empty()) continue;
      for (const auto& [m, c] : a.terms()) r.block(i, j).add(m, c * model.dirac.block_symbol(i, j, m.exponents));
    }
  return r;
}

OneForm d_D(const SpectralModel& model, const AlgebraElement& a) {
  if (a.radius() > model.truncation)
    throw TruncationError("d_D argument radius " + std::to_string(a.radius()) + " exceeds truncation " +
                          std::to_string(model.truncation));
  return commutator_with_dirac(model, a);
}

// tau of the diagonal of eta^* eta' is sum_{r,c} tau(eta_cr^* eta'_cr).
cplx oneform_inner(const OneForm& eta, const OneForm& eta2) {
  cplx s{};
  for (int i = 0; i < eta.k(); ++i)
    for (int j = 0; j < eta.k(); ++j) s += gns_inner(eta.block(i, j), eta2.block(i, j));
  return s / static_cast<double>(eta.k());
}

AlgebraElement Laplacian::apply(const AlgebraElement& x) const {
  Eigen::VectorXcd v = basis_.coordinates(x);
  Eigen::VectorXcd y = matrix_ * v;
  return basis_.element(y);
}

int LaplacianData::find(double lambda) const {
  for (std::size_t i = 0; i < spaces.size(); ++i)
    if (std::abs(spaces[i].eigenvalue - lambda) <= grouping_tolerance * std::max(1.0, std::abs(lambda)))
      return static_cast<int>(i);
  return -1;
}

std::vector<int> LaplacianData::multiplicities() const {
  std::vector<int> m;
  for (const auto& s : spaces) m.push_back(s.multiplicity());
  return m;
}

namespace {

// Orthonormal basis of span(V) built by projecting the standard basis vectors
// in index order, so degenerate eigenspaces get a reproducible basis.
Eigen::MatrixXcd canonical_basis(const Eigen::MatrixXcd& V) {
  const Eigen::Index n = V.rows(), d = V.cols();
  Eigen::MatrixXcd out(n, d);
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < n && found < d; ++i) {
    Eigen::VectorXcd v = V * V.row(i).adjoint();
    for (Eigen::Index j = 0; j < found; ++j) v -= out.col(j) * out.col(j).dot(v);
    double nv = v.norm();
    if (nv < 1e-6) continue;
    out.col(found++) = v / nv;
  }
  if (found < d) throw Error("could not orthonormalize eigenspace");
  return out;
}

double monomial_energy(const SpectralModel& model, const Monomial& m, int truncation) {
  AlgebraElement e = AlgebraElement::monomial(model.spec, truncation, m);
  OneForm de = commutator_with_dirac(model, e);
  return oneform_inner(de, de).real() / gns_inner(e, e).real();
}

}  // namespace

LaplacianBuild build_laplacian(const SpectralModel& model, double grouping_tolerance) {
  model.validate();
  MonomialBasis basis(model.spec, model.truncation);
  const auto n = static_cast<Eigen::Index>(basis.size());

  std::vector<OneForm> dvec;
  dvec.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) dvec.push_back(d_D(model, basis.basis_element(i)));

  Eigen::MatrixXcd L(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      L(i, j) = -oneform_inner(dvec[static_cast<std::size_t>(i)], dvec[static_cast<std::size_t>(j)]);

  double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
  if ((L - L.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw Error("Laplacian Gram matrix is not Hermitian; truncation bookkeeping is broken");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(L);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");

  LaplacianData data;
  data.grouping_tolerance = grouping_tolerance;
  data.eigenvalues = es.eigenvalues().reverse();
  data.eigenvectors = es.eigenvectors().rowwise().reverse();

  // Smallest |lambda| carried by a monomial just outside the box.
  double shell = std::numeric_limits<double>::infinity();
  for (int s = 0; s < model.spec->num_summands(); ++s)
    for (auto& e : lattice_box(model.spec->rank(s), model.truncation + 1)) {
      Monomial m{s, e};
      if (m.radius() != model.truncation + 1) continue;
      shell = std::min(shell, monomial_energy(model, m, model.truncation + 1));
    }

  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    const double lead = data.eigenvalues[start];
    while (end < n && std::abs(data.eigenvalues[end] - lead) <= grouping_tolerance * std::max(1.0, std::abs(lead)))
      ++end;
    Eigenspace sp;
    sp.eigenvalue = data.eigenvalues.segment(start, end - start).mean();
    sp.coordinates = canonical_basis(data.eigenvectors.middleCols(start, end - start));
    for (Eigen::Index c = 0; c < sp.coordinates.cols(); ++c)
      sp.basis.push_back(basis.element(sp.coordinates.col(c), 1e-13));
    sp.complete = std::abs(sp.eigenvalue) < shell - grouping_tolerance * std::max(1.0, shell);
    data.spaces.push_back(std::move(sp));
    start = end;
  }

  return {Laplacian(std::move(basis), std::move(L)), std::move(data)};
}

AlgebraElement dstar_formula(const Laplacian& L, const AlgebraElement& b, const AlgebraElement& c) {
  AlgebraElement bc = b * c;
  AlgebraElement r = b * L(c) - L(b) * c - L(bc);
  return 0.5 * r;
}

AlgebraElement dstar_formula_negated(const Laplacian& L, const AlgebraElement& b, const AlgebraElement& c) {
  return -1.0 * dstar_formula(L, b, c);
}

AlgebraElement psi(const Laplacian& L, const AlgebraElement& x, const AlgebraElement& y) {
  return L(x * y) - L(x) * y + x * L(y);
}

AlgebraElement heat_semigroup(const LaplacianData& data, const MonomialBasis& basis, double t,
                              const AlgebraElement& x) {
  if (!(t > 0.0)) throw Error("heat semigroup time must be positive");
  Eigen::VectorXcd v = basis.coordinates(x);
  Eigen::VectorXcd w = data.eigenvectors.adjoint() * v;
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] *= std::exp(t * data.eigenvalues[i]);
  return basis.element(data.eigenvectors * w, 1e-15);
}

bool AdmissibilityReport::all_pass() const {
  return compact_resolvent && invariance_residual < tolerance && eigenvector_residual < tolerance && connected() &&
         density && self_adjoint_residual < tolerance && max_eigenvalue <= tolerance &&
         star_compatibility_residual < tolerance;
}

AdmissibilityReport check_admissibility(const SpectralModel& model, const LaplacianBuild& build,
                                        double tolerance) {
  AdmissibilityReport rep;
  rep.tolerance = tolerance;
  const auto& L = build.L;
  const auto& data = build.data;
  const auto& basis = L.basis();
  const Eigen::MatrixXcd& M = L.matrix();

  rep.self_adjoint_residual = (M - M.adjoint()).cwiseAbs().maxCoeff();
  rep.max_eigenvalue = data.eigenvalues.size() ? data.eigenvalues[0] : 0.0;

  // (iii): images of basis vectors are again finite monomial sums.
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Eigen::VectorXcd y = M.col(static_cast<Eigen::Index>(i));
    Eigen::VectorXcd back = basis.coordinates(basis.element(y));
    rep.invariance_residual = std::max(rep.invariance_residual, (y - back).norm());
  }
  // (iv): eigenvectors are genuine eigenvectors of the assembled matrix.
  for (Eigen::Index c = 0; c < data.eigenvectors.cols(); ++c) {
    Eigen::VectorXcd v = data.eigenvectors.col(c);
    rep.eigenvector_residual = std::max(rep.eigenvector_residual, (M * v - data.eigenvalues[c] * v).norm());
  }

  double scale = std::max(1.0, std::abs(data.eigenvalues.size() ? data.eigenvalues[data.eigenvalues.size() - 1] : 0.0));
  Eigen::Index kdim = 0;
  while (kdim < data.eigenvalues.size() && std::abs(data.eigenvalues[kdim]) <= tolerance * scale) ++kdim;
  rep.kernel_dimension = static_cast<int>(kdim);
  if (kdim > 0) {
    Eigen::VectorXcd u = basis.coordinates(AlgebraElement::unit(model.spec, model.truncation));
    u.normalize();
    Eigen::MatrixXcd K = data.eigenvectors.leftCols(kdim);
    double captured = (K.adjoint() * u).norm();
    rep.kernel_spanned_by_unit = kdim == 1 && std::abs(captured - 1.0) < tolerance;
  }

  for (std::size_t i = 0; i < basis.size(); ++i) {
    AlgebraElement x = basis.basis_element(i);
    AlgebraElement diff = L(star(x)) - star(L(x));
    rep.star_compatibility_residual = std::max(rep.star_compatibility_residual, gns_norm(diff));
  }
  return rep;
}

}  // namespace qiso
