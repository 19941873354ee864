// SPDX-License-Identifier: Apache-2.0
#include "qiso/toric_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace qiso {

AlgebraSpec::AlgebraSpec(std::vector<ToricSummand> summands) : summands_(std::move(summands)) {
  if (summands_.empty()) throw Error("algebra spec needs at least one summand");
  for (const auto& s : summands_) {
    if (s.rank < 1) throw Error("summand rank must be positive");
    if (s.phases.size() != static_cast<std::size_t>(s.rank * s.rank))
      throw Error("phase matrix has wrong size");
    for (int j = 0; j < s.rank; ++j) {
      if (!(s.phase(j, j) == Phase{})) throw Error("diagonal phases must be 1");
      for (int k = 0; k < s.rank; ++k)
        if (!(s.phase(j, k) * s.phase(k, j) == Phase{}))
          throw Error("phase matrix must satisfy lambda_jk lambda_kj = 1");
    }
  }
}

AlgebraSpec AlgebraSpec::circle() { return commutative_torus(1); }

AlgebraSpec AlgebraSpec::commutative_torus(int rank) {
  ToricSummand s;
  s.rank = rank;
  s.phases.assign(static_cast<std::size_t>(rank * rank), Phase{});
  return AlgebraSpec({s});
}

AlgebraSpec AlgebraSpec::torus(const Phase& lambda) {
  ToricSummand s;
  s.rank = 2;
  s.phases = {Phase{}, lambda, lambda.inverse(), Phase{}};
  return AlgebraSpec({s});
}

AlgebraSpec AlgebraSpec::direct_sum(const std::vector<AlgebraSpec>& parts) {
  std::vector<ToricSummand> all;
  for (const auto& p : parts) all.insert(all.end(), p.summands().begin(), p.summands().end());
  return AlgebraSpec(std::move(all));
}

bool AlgebraSpec::operator==(const AlgebraSpec& o) const {
  if (summands_.size() != o.summands_.size()) return false;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    if (summands_[i].rank != o.summands_[i].rank) return false;
    for (std::size_t j = 0; j < summands_[i].phases.size(); ++j)
      if (!(summands_[i].phases[j] == o.summands_[i].phases[j])) return false;
  }
  return true;
}

int Monomial::radius() const {
  int r = 0;
  for (int e : exponents) r = std::max(r, std::abs(e));
  return r;
}

int Monomial::degree() const {
  int r = 0;
  for (int e : exponents) r += std::abs(e);
  return r;
}

Monomial operator+(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.exponents.size(); ++i) r.exponents[i] += b.exponents[i];
  return r;
}

Monomial operator-(const Monomial& a) {
  Monomial r = a;
  for (int& e : r.exponents) e = -e;
  return r;
}

std::string to_string(const Monomial& m) {
  std::ostringstream os;
  os << "[" << m.summand << ":";
  for (std::size_t i = 0; i < m.exponents.size(); ++i) os << (i ? "," : "") << m.exponents[i];
  os << "]";
  return os.str();
}

// U^a U^b: every U_k^{a_k} (k > j) has to move right past U_j^{b_j}, and
// U_k^p U_j^q = lambda_jk^{-pq} U_j^q U_k^p.
Phase product_phase(const ToricSummand& s, const std::vector<int>& a, const std::vector<int>& b) {
  Phase p;
  for (int j = 0; j < s.rank; ++j) {
    if (b[static_cast<std::size_t>(j)] == 0) continue;
    for (int k = j + 1; k < s.rank; ++k) {
      std::int64_t e = static_cast<std::int64_t>(a[static_cast<std::size_t>(k)]) * b[static_cast<std::size_t>(j)];
      if (e != 0) p = p * s.phase(j, k).pow(-e);
    }
  }
  return p;
}

// (U^a)^* = U_d^{-a_d} ... U_1^{-a_1}; reordering costs lambda_jk^{-a_j a_k} per pair.
Phase star_phase(const ToricSummand& s, const std::vector<int>& a) {
  Phase p;
  for (int j = 0; j < s.rank; ++j)
    for (int k = j + 1; k < s.rank; ++k) {
      std::int64_t e = static_cast<std::int64_t>(a[static_cast<std::size_t>(j)]) * a[static_cast<std::size_t>(k)];
      if (e != 0) p = p * s.phase(j, k).pow(-e);
    }
  return p;
}

AlgebraElement::AlgebraElement(SpecPtr spec, int truncation) : spec_(std::move(spec)), truncation_(truncation) {
  if (!spec_) throw Error("algebra element without spec");
  if (truncation_ < 0) throw Error("negative truncation radius");
}

AlgebraElement AlgebraElement::unit(SpecPtr spec, int truncation) {
  AlgebraElement e(spec, truncation);
  for (int s = 0; s < spec->num_summands(); ++s)
    e.add(Monomial{s, std::vector<int>(static_cast<std::size_t>(spec->rank(s)), 0)}, 1.0);
  return e;
}

AlgebraElement AlgebraElement::monomial(SpecPtr spec, int truncation, Monomial m, cplx c) {
  AlgebraElement e(std::move(spec), truncation);
  e.add(m, c);
  return e;
}

int AlgebraElement::radius() const {
  int r = 0;
  for (const auto& [m, c] : terms_) r = std::max(r, m.radius());
  return r;
}

cplx AlgebraElement::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cplx{} : it->second;
}

void AlgebraElement::add(const Monomial& m, cplx c) {
  if (m.summand < 0 || m.summand >= spec_->num_summands() ||
      static_cast<int>(m.exponents.size()) != spec_->rank(m.summand))
    throw Error("monomial does not belong to this algebra: " + to_string(m));
  if (m.radius() > truncation_)
    throw TruncationError("monomial " + to_string(m) + " exceeds truncation radius " + std::to_string(truncation_));
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

AlgebraElement AlgebraElement::with_truncation(int truncation) const {
  AlgebraElement r(spec_, truncation);
  for (const auto& [m, c] : terms_) r.add(m, c);
  return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (!(*spec_ == *o.spec_)) throw Error("spec mismatch");
  truncation_ = std::max(truncation_, o.truncation_);
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (!(*spec_ == *o.spec_)) throw Error("spec mismatch");
  truncation_ = std::max(truncation_, o.truncation_);
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx c) {
  if (c == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

AlgebraElement AlgebraElement::pruned(double tol) const {
  AlgebraElement r(spec_, truncation_);
  for (const auto& [m, c] : terms_)
    if (std::abs(c) >= tol) r.terms_.emplace(m, c);
  return r;
}

double AlgebraElement::max_abs() const {
  double r = 0.0;
  for (const auto& [m, c] : terms_) r = std::max(r, std::abs(c));
  return r;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
AlgebraElement operator*(cplx c, AlgebraElement a) { return a *= c; }

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y, int buffer_radius) {
  if (!(*x.spec() == *y.spec())) throw Error("spec mismatch in multiply");
  if (x.radius() + y.radius() > buffer_radius)
    throw TruncationError("buffer radius " + std::to_string(buffer_radius) + " below product radius " +
                          std::to_string(x.radius() + y.radius()));
  AlgebraElement r(x.spec(), buffer_radius);
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      if (mx.summand != my.summand) continue;
      const auto& s = x.spec()->summand(mx.summand);
      r.add(mx + my, cx * cy * product_phase(s, mx.exponents, my.exponents).value());
    }
  return r;
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
  int buffer = std::max({x.truncation(), y.truncation(), x.radius() + y.radius()});
  return multiply(x, y, buffer);
}

AlgebraElement star(const AlgebraElement& x) {
  AlgebraElement r(x.spec(), x.truncation());
  for (const auto& [m, c] : x.terms()) {
    const auto& s = x.spec()->summand(m.summand);
    r.add(-m, std::conj(c) * star_phase(s, m.exponents).value());
  }
  return r;
}

cplx trace(const AlgebraElement& x) {
  cplx t{};
  for (const auto& [m, c] : x.terms())
    if (std::all_of(m.exponents.begin(), m.exponents.end(), [](int e) { return e == 0; })) t += c;
  return t * x.spec()->summand_weight();
}

// tau((c U^m)^* (c' U^m)) = conj(c) c' exactly: the star phase and the
// reordering phase cancel, so distinct monomials are orthogonal.
cplx gns_inner(const AlgebraElement& x, const AlgebraElement& y) {
  if (!(*x.spec() == *y.spec())) throw Error("spec mismatch in gns_inner");
  cplx r{};
  const auto& small = x.terms().size() <= y.terms().size() ? x : y;
  const auto& large = &small == &x ? y : x;
  for (const auto& [m, c] : small.terms()) {
    auto it = large.terms().find(m);
    if (it == large.terms().end()) continue;
    r += &small == &x ? std::conj(c) * it->second : std::conj(it->second) * c;
  }
  return r * x.spec()->summand_weight();
}

double gns_norm(const AlgebraElement& x) { return std::sqrt(std::max(0.0, gns_inner(x, x).real())); }

std::vector<std::vector<int>> lattice_box(int d, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(d), -r);
  if (d == 0) return {{}};
  while (true) {
    out.push_back(cur);
    int i = d - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == r) {
      cur[static_cast<std::size_t>(i)] = -r;
      --i;
    }
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
  }
  return out;
}

MonomialBasis::MonomialBasis(SpecPtr spec, int radius)
    : spec_(std::move(spec)), radius_(radius), scale_(std::sqrt(spec_->summand_weight())) {
  for (int s = 0; s < spec_->num_summands(); ++s)
    for (auto& e : lattice_box(spec_->rank(s), radius)) {
      index_.emplace(Monomial{s, e}, static_cast<long>(monomials_.size()));
      monomials_.push_back(Monomial{s, std::move(e)});
    }
}

long MonomialBasis::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

Eigen::VectorXcd MonomialBasis::coordinates(const AlgebraElement& x) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size()));
  for (const auto& [m, c] : x.terms()) {
    long i = index_of(m);
    if (i < 0) throw TruncationError("element has support outside basis radius " + std::to_string(radius_));
    v[i] = c * scale_;
  }
  return v;
}

AlgebraElement MonomialBasis::element(const Eigen::VectorXcd& v, double tol) const {
  AlgebraElement r(spec_, radius_);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > tol) r.add(monomials_[static_cast<std::size_t>(i)], v[i] / scale_);
  return r;
}

AlgebraElement MonomialBasis::basis_element(std::size_t i) const {
  return AlgebraElement::monomial(spec_, radius_, monomials_[i], 1.0 / scale_);
}

}  // namespace qiso
