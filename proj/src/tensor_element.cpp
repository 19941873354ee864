// SPDX-License-Identifier: Apache-2.0
#include "qiso/tensor_element.hpp"

#include <algorithm>
#include <cmath>

namespace qiso {

TensorElement TensorElement::embed(const AlgebraElement& x, int dim) {
  TensorElement t(x.spec(), dim);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& [m, c] : x.terms()) t.add(m, c * I);
  return t;
}

TensorElement TensorElement::unit(SpecPtr spec, int dim) {
  return embed(AlgebraElement::unit(spec, 0), dim);
}

int TensorElement::radius() const {
  int r = 0;
  for (const auto& [m, s] : terms_) r = std::max(r, m.radius());
  return r;
}

void TensorElement::add(const Monomial& m, const Eigen::MatrixXcd& s) {
  if (s.rows() != dim_ || s.cols() != dim_) throw Error("coefficient matrix has wrong dimension");
  auto it = terms_.find(m);
  if (it == terms_.end())
    terms_.emplace(m, s);
  else
    it->second += s;
}

Eigen::MatrixXcd TensorElement::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Eigen::MatrixXcd::Zero(dim_, dim_) : it->second;
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  for (const auto& [m, s] : o.terms_) add(m, s);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
  for (const auto& [m, s] : o.terms_) add(m, -s);
  return *this;
}

TensorElement& TensorElement::operator*=(cplx c) {
  for (auto& [m, s] : terms_) s *= c;
  return *this;
}

TensorElement TensorElement::times_right(const Eigen::MatrixXcd& s) const {
  TensorElement r(spec_, dim_);
  for (const auto& [m, x] : terms_) r.add(m, x * s);
  return r;
}

TensorElement TensorElement::pruned(double tol) const {
  TensorElement r(spec_, dim_);
  for (const auto& [m, x] : terms_)
    if (x.norm() > tol) r.terms_.emplace(m, x);
  return r;
}

double TensorElement::norm() const {
  double s = 0.0;
  for (const auto& [m, x] : terms_) s += x.squaredNorm();
  return std::sqrt(s * spec_->summand_weight());
}

TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
TensorElement operator*(cplx c, TensorElement a) { return a *= c; }

TensorElement operator*(const TensorElement& x, const TensorElement& y) {
  if (x.dim() != y.dim()) throw Error("tensor factor dimension mismatch");
  TensorElement r(x.spec(), x.dim());
  for (const auto& [mx, sx] : x.terms())
    for (const auto& [my, sy] : y.terms()) {
      if (mx.summand != my.summand) continue;
      cplx ph = product_phase(x.spec()->summand(mx.summand), mx.exponents, my.exponents).value();
      r.add(mx + my, ph * (sx * sy));
    }
  return r.pruned();
}

TensorElement star(const TensorElement& x) {
  TensorElement r(x.spec(), x.dim());
  for (const auto& [m, s] : x.terms())
    r.add(-m, star_phase(x.spec()->summand(m.summand), m.exponents).value() * s.adjoint());
  return r;
}

Eigen::MatrixXcd slice_trace(const TensorElement& x) {
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(x.dim(), x.dim());
  for (const auto& [m, s] : x.terms())
    if (std::all_of(m.exponents.begin(), m.exponents.end(), [](int e) { return e == 0; })) r += s;
  return r * x.spec()->summand_weight();
}

// Distinct monomials are tau-orthogonal, so only matching terms contribute.
Eigen::MatrixXcd module_inner(const TensorElement& x, const TensorElement& y) {
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(x.dim(), x.dim());
  for (const auto& [m, s] : x.terms()) {
    auto it = y.terms().find(m);
    if (it != y.terms().end()) r += s.adjoint() * it->second;
  }
  return r * x.spec()->summand_weight();
}

TensorElement apply_laplacian(const Laplacian& L, const TensorElement& x) {
  const auto& basis = L.basis();
  TensorElement r(x.spec(), x.dim());
  for (const auto& [m, s] : x.terms()) {
    long j = basis.index_of(m);
    if (j < 0) throw TruncationError("tensor element outside Laplacian basis: " + to_string(m));
    const auto col = L.matrix().col(j);
    for (Eigen::Index i = 0; i < col.size(); ++i)
      if (col[i] != cplx{}) r.add(basis[static_cast<std::size_t>(i)], col[i] * s);
  }
  return r;
}

TensorForm::TensorForm(SpecPtr spec, int k_, int dim) : k(k_) {
  blocks.assign(static_cast<std::size_t>(k * k), TensorElement(spec, dim));
}

TensorForm operator*(const TensorForm& x, const TensorForm& y) {
  const int k = x.k;
  TensorForm r(x.blocks.front().spec(), k, x.blocks.front().dim());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        if (x.block(i, l).is_zero() || y.block(l, j).is_zero()) continue;
        r.block(i, j) += x.block(i, l) * y.block(l, j);
      }
  return r;
}

TensorForm operator*(const TensorElement& a, const TensorForm& x) {
  TensorForm r(a.spec(), x.k, a.dim());
  for (std::size_t i = 0; i < x.blocks.size(); ++i)
    if (!x.blocks[i].is_zero()) r.blocks[i] = a * x.blocks[i];
  return r;
}

TensorForm dirac_commutator(const SpectralModel& model, const TensorElement& x) {
  const int k = model.k();
  TensorForm r(x.spec(), k, x.dim());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (model.dirac.weights[static_cast<std::size_t>(i * k + j)].empty()) continue;
      for (const auto& [m, s] : x.terms()) r.block(i, j).add(m, model.dirac.block_symbol(i, j, m.exponents) * s);
    }
  return r;
}

}  // namespace qiso
