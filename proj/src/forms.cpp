// SPDX-License-Identifier: Apache-2.0
#include "qiso/forms.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace qiso {

namespace {

bool is_unit(const Monomial& m) {
  return std::all_of(m.exponents.begin(), m.exponents.end(), [](int e) { return e == 0; });
}

std::optional<std::pair<Monomial, cplx>> times(const AlgebraSpec& spec, const Monomial& x, const Monomial& y) {
  if (x.summand != y.summand) return std::nullopt;
  return std::make_pair(x + y, product_phase(spec.summand(x.summand), x.exponents, y.exponents).value());
}

Eigen::MatrixXcd symbol_matrix(const SpectralModel& model, const Monomial& a) {
  const int k = model.k();
  Eigen::MatrixXcd F(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) F(r, c) = model.dirac.block_symbol(r, c, a.exponents);
  return F;
}

// Orthonormal basis of the column space, dropping singular values below tol * largest.
Eigen::MatrixXcd range_basis(const Eigen::MatrixXcd& M, double tol) {
  if (M.cols() == 0 || M.rows() == 0) return Eigen::MatrixXcd(M.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cut = tol * std::max(s.size() ? s[0] : 0.0, 1e-300);
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > cut) ++r;
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& M, double tol) {
  if (M.cols() == 0) return Eigen::MatrixXcd(0, 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = tol * std::max(s.size() ? s[0] : 0.0, 1e-300);
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > cut) ++r;
  return svd.matrixV().rightCols(M.cols() - r);
}

}  // namespace

FormWord d_word(const FormWord& w) {
  if (w.empty()) throw Error("empty form word");
  FormWord out;
  out.push_back(Monomial{w.front().summand, std::vector<int>(w.front().exponents.size(), 0)});
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

FormsComplex::FormsComplex(const SpectralModel& model, const LaplacianBuild& build, const FormsOptions& options)
    : model_(model), k_(model.k()) {
  if (options.max_degree < 1) throw Error("forms need max_degree >= 1");
  for (const auto& sp : build.data.spaces) {
    if (!sp.complete || std::abs(sp.eigenvalue) > options.max_energy) continue;
    for (const auto& x : sp.basis) {
      if (x.terms().size() != 1) throw Error("forms require eigenspaces spanned by monomials");
      letters_.push_back(x.terms().begin()->first);
    }
  }
  std::sort(letters_.begin(), letters_.end());
  if (letters_.empty()) throw Error("no complete eigenspace below the energy cutoff");
  const AlgebraSpec& spec = *model.spec;

  // Words of each degree; a1..an exclude the units, for which d vanishes.
  std::vector<std::vector<FormWord>> words(static_cast<std::size_t>(options.max_degree + 1));
  for (const auto& a : letters_) words[0].push_back({a});
  for (int n = 1; n <= options.max_degree; ++n)
    for (const auto& w : words[static_cast<std::size_t>(n - 1)])
      for (const auto& a : letters_) {
        if (is_unit(a)) continue;
        FormWord x = w;
        x.push_back(a);
        words[static_cast<std::size_t>(n)].push_back(std::move(x));
      }

  // Ambient monomials: every product of at most max_degree + 1 letters.
  std::vector<Monomial> frontier = letters_;
  std::map<Monomial, int> seen;
  for (const auto& m : frontier) seen.emplace(m, 0);
  for (int n = 1; n <= options.max_degree; ++n) {
    std::vector<Monomial> next;
    for (const auto& x : frontier)
      for (const auto& a : letters_)
        if (auto p = times(spec, x, a); p && seen.emplace(p->first, 0).second) next.push_back(p->first);
    frontier.insert(frontier.end(), next.begin(), next.end());
  }
  for (const auto& [m, unused] : seen) index_.emplace(m, static_cast<int>(index_.size()));

  auto image_of = [&](const std::vector<FormWord>& ws) {
    Eigen::MatrixXcd M(ambient_dim(), static_cast<Eigen::Index>(ws.size()));
    for (std::size_t j = 0; j < ws.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = ambient(ws[j]);
    return M;
  };
  auto d_image_of = [&](const std::vector<FormWord>& ws) {
    Eigen::MatrixXcd M(ambient_dim(), static_cast<Eigen::Index>(ws.size()));
    for (std::size_t j = 0; j < ws.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = ambient(d_word(ws[j]));
    return M;
  };

  const double tol = options.rank_tolerance;
  for (int n = 0; n <= options.max_degree; ++n) {
    FormsSpace sp;
    sp.degree = n;
    sp.words = words[static_cast<std::size_t>(n)];
    sp.image = image_of(sp.words);
    if (sp.image.cols() > 0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gram(sp.image.adjoint() * sp.image, Eigen::EigenvaluesOnly);
      sp.gram_min_eigenvalue = gram.eigenvalues().minCoeff();
      if (sp.gram_min_eigenvalue < -1e-10 * std::max(1.0, gram.eigenvalues().maxCoeff()))
        throw Error("form Gram matrix is indefinite");
    }
    if (n == 0) {
      sp.junk = Eigen::MatrixXcd(ambient_dim(), 0);
    } else {
      const FormsSpace& prev = spaces_.back();
      Eigen::MatrixXcd K = null_space(prev.image, tol);
      sp.junk = K.cols() ? range_basis(d_image_of(prev.words) * K, tol) : Eigen::MatrixXcd(ambient_dim(), 0);
    }
    Eigen::MatrixXcd projected = sp.image - sp.junk * (sp.junk.adjoint() * sp.image);
    sp.basis = range_basis(projected, tol);
    sp.coordinates = sp.basis.adjoint() * sp.image;
    const int r = sp.dim();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(sp.coordinates);
    Eigen::MatrixXcd selected(r, r);
    for (int p = 0; p < r; ++p) {
      int w = static_cast<int>(qr.colsPermutation().indices()[p]);
      sp.representatives.push_back(w);
      selected.col(p) = sp.coordinates.col(w);
    }
    sp.representative_inverse = selected.inverse();
    spaces_.push_back(std::move(sp));
  }

  for (int n = 0; n < options.max_degree; ++n) {
    const FormsSpace& src = spaces_[static_cast<std::size_t>(n)];
    const FormsSpace& dst = spaces_[static_cast<std::size_t>(n + 1)];
    Eigen::MatrixXcd lifted(ambient_dim(), src.dim());
    for (int p = 0; p < src.dim(); ++p)
      lifted.col(p) = ambient(d_word(src.words[static_cast<std::size_t>(src.representatives[static_cast<std::size_t>(p)])]));
    d_.push_back(dst.basis.adjoint() * lifted * src.representative_inverse);
  }
}

long FormsComplex::ambient_index(const Monomial& m, int r, int c) const {
  auto it = index_.find(m);
  if (it == index_.end()) return -1;
  return static_cast<long>(it->second) * k_ * k_ + r * k_ + c;
}

Eigen::VectorXcd FormsComplex::ambient(const FormWord& w, cplx c) const {
  const AlgebraSpec& spec = *model_.spec;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(ambient_dim());
  Monomial m = w.front();
  cplx ph = c;
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Identity(k_, k_);
  for (std::size_t i = 1; i < w.size(); ++i) {
    auto p = times(spec, m, w[i]);
    if (!p) return v;
    m = p->first;
    ph *= p->second;
    F = F * symbol_matrix(model_, w[i]);
  }
  const double scale = std::sqrt(spec.summand_weight() / k_);
  for (int r = 0; r < k_; ++r)
    for (int col = 0; col < k_; ++col) {
      if (F(r, col) == cplx{}) continue;
      long idx = ambient_index(m, r, col);
      if (idx < 0) throw TruncationError("form word leaves the ambient index: " + to_string(m));
      v[idx] += scale * ph * F(r, col);
    }
  return v;
}

std::vector<int> FormsComplex::offsets() const {
  std::vector<int> off;
  int at = 0;
  for (const auto& sp : spaces_) {
    off.push_back(at);
    at += sp.dim();
  }
  return off;
}

int FormsComplex::total_dim() const {
  int t = 0;
  for (const auto& sp : spaces_) t += sp.dim();
  return t;
}

Eigen::MatrixXcd FormsComplex::dprime() const {
  const auto off = offsets();
  Eigen::MatrixXcd Dp = Eigen::MatrixXcd::Zero(total_dim(), total_dim());
  for (std::size_t n = 0; n < d_.size(); ++n) {
    const auto& d = d_[n];
    Dp.block(off[n + 1], off[n], d.rows(), d.cols()) = d;
    Dp.block(off[n], off[n + 1], d.cols(), d.rows()) = d.adjoint();
  }
  return Dp;
}

InducedUnitary build_Un(const ConcreteAction& action, const FormsComplex& forms, int n) {
  const SpectralModel& model = forms.model();
  const FormsSpace& sp = forms.space(n);
  ActionEvaluator alpha(action, model.spec);
  const int D = alpha.dim();
  const int k = model.k();
  const int r = sp.dim();
  const double scale = std::sqrt(model.spec->summand_weight() / k);

  // Projection of U(w (x) .) onto the basis of H^n, as an (r*D) x D matrix.
  InducedUnitary out;
  auto project = [&](const FormWord& w) {
    TensorForm Y_form(model.spec, k, D);
    for (int i = 0; i < k; ++i) Y_form.block(i, i) = alpha.of_monomial(w.front());
    for (std::size_t i = 1; i < w.size(); ++i) Y_form = Y_form * dirac_commutator(model, alpha.of_monomial(w[i]));
    // Rows: ambient index; columns: the D x D coefficient flattened column-major.
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(forms.ambient_dim(), D * D);
    double outside = 0.0;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        for (const auto& [m, s] : Y_form.block(a, b).terms()) {
          long idx = forms.ambient_index(m, a, b);
          if (idx < 0) {
            outside += scale * scale * s.squaredNorm();
            continue;
          }
          Y.row(idx) += scale * Eigen::Map<const Eigen::RowVectorXcd>(s.data(), D * D);
        }
    const Eigen::MatrixXcd coeff = sp.basis.adjoint() * Y;
    const Eigen::MatrixXcd rest = Y - sp.basis * coeff - sp.junk * (sp.junk.adjoint() * Y);
    out.leakage = std::max(out.leakage, std::sqrt(rest.squaredNorm() + outside));
    Eigen::MatrixXcd Z(r * D, D);
    for (int j = 0; j < r; ++j) Z.block(j * D, 0, D, D) = Eigen::Map<const Eigen::MatrixXcd>(coeff.row(j).eval().data(), D, D);
    return Z;
  };

  out.matrix = Eigen::MatrixXcd::Zero(r * D, r * D);
  for (int p = 0; p < r; ++p) {
    Eigen::MatrixXcd Z = project(sp.words[static_cast<std::size_t>(sp.representatives[static_cast<std::size_t>(p)])]);
    for (int i = 0; i < r; ++i) {
      cplx c = sp.representative_inverse(p, i);
      if (c != cplx{}) out.matrix.block(0, i * D, r * D, D) += c * Z;
    }
  }

  // U must respect the linear relations among word classes; sample the other words.
  std::vector<bool> is_rep(sp.words.size(), false);
  for (int p : sp.representatives) is_rep[static_cast<std::size_t>(p)] = true;
  const std::size_t stride = std::max<std::size_t>(1, sp.words.size() / 64);
  for (std::size_t w = 0; w < sp.words.size(); w += stride) {
    if (is_rep[w]) continue;
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(r * D, D);
    for (int i = 0; i < r; ++i) expected += sp.coordinates(i, static_cast<Eigen::Index>(w)) * out.matrix.block(0, i * D, r * D, D);
    out.well_definedness = std::max(out.well_definedness, (project(sp.words[w]) - expected).norm());
  }
  return out;
}

namespace {

// U (d (x) 1) and (d (x) 1) U without forming the Kronecker product.
Eigen::MatrixXcd times_kron(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& d, int D) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(U.rows(), d.cols() * D);
  for (Eigen::Index j = 0; j < d.cols(); ++j)
    for (Eigen::Index i = 0; i < d.rows(); ++i)
      if (d(i, j) != cplx{}) out.middleCols(j * D, D) += d(i, j) * U.middleCols(i * D, D);
  return out;
}

Eigen::MatrixXcd kron_times(const Eigen::MatrixXcd& d, const Eigen::MatrixXcd& U, int D) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d.rows() * D, U.cols());
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    for (Eigen::Index j = 0; j < d.cols(); ++j)
      if (d(i, j) != cplx{}) out.middleRows(i * D, D) += d(i, j) * U.middleRows(j * D, D);
  return out;
}

}  // namespace

bool EquivarianceReport::pass(double tol) const {
  for (double u : unitarity)
    if (!(u <= tol)) return false;
  return leakage <= tol && well_definedness <= tol && commutation <= tol && d_squared <= tol &&
         dprime_self_adjoint <= tol;
}

EquivarianceReport check_equivariance(const ConcreteAction& action, const FormsComplex& forms) {
  EquivarianceReport rep;
  const int D = action.realization.dim;
  std::vector<Eigen::MatrixXcd> U;
  for (int n = 0; n <= forms.max_degree(); ++n) {
    InducedUnitary u = build_Un(action, forms, n);
    const Eigen::Index s = u.matrix.rows();
    const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(s, s);
    rep.unitarity.push_back(std::max((u.matrix.adjoint() * u.matrix - Id).norm(), (u.matrix * u.matrix.adjoint() - Id).norm()));
    rep.leakage = std::max(rep.leakage, u.leakage);
    rep.well_definedness = std::max(rep.well_definedness, u.well_definedness);
    rep.dimensions.push_back(forms.space(n).dim());
    U.push_back(std::move(u.matrix));
  }
  // D' is block tridiagonal, so U (D' (x) 1) = (D' (x) 1) U splits into the d and d^* blocks.
  for (int n = 0; n < forms.max_degree(); ++n) {
    const Eigen::MatrixXcd& d = forms.d(n);
    const Eigen::MatrixXcd da = d.adjoint();
    const auto& Un = U[static_cast<std::size_t>(n)];
    const auto& Un1 = U[static_cast<std::size_t>(n + 1)];
    rep.commutation = std::max(rep.commutation, (times_kron(Un1, d, D) - kron_times(d, Un, D)).norm());
    rep.commutation = std::max(rep.commutation, (times_kron(Un, da, D) - kron_times(da, Un1, D)).norm());
    if (n + 1 < forms.max_degree()) rep.d_squared = std::max(rep.d_squared, (forms.d(n + 1) * forms.d(n)).norm());
  }
  const Eigen::MatrixXcd Dp = forms.dprime();
  rep.dprime_self_adjoint = (Dp - Dp.adjoint()).norm();
  return rep;
}

}  // namespace qiso
