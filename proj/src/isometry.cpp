// SPDX-License-Identifier: Apache-2.0
#include "qiso/isometry.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <optional>

namespace qiso {

std::string generator_name(int rank, int j) {
  if (rank == 1) return "U";
  if (rank == 2) return j == 0 ? "U" : "V";
  return "U" + std::to_string(j + 1);
}

namespace {

Monomial unit_monomial(int rank) { return Monomial{0, std::vector<int>(static_cast<std::size_t>(rank), 0)}; }

Monomial generator_monomial(int rank, int g) {
  Monomial m = unit_monomial(rank);
  m.exponents[static_cast<std::size_t>(g)] = 1;
  return m;
}

bool is_unit(const Monomial& m) {
  return std::all_of(m.exponents.begin(), m.exponents.end(), [](int e) { return e == 0; });
}

std::string exponent_label(const std::vector<int>& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s;
}

// Eigenvalue of a monomial under L, or nullopt when it is not an eigenvector
// or lies outside the basis.
std::optional<double> monomial_eigenvalue(const Laplacian& L, const Monomial& m) {
  long j = L.basis().index_of(m);
  if (j < 0) return std::nullopt;
  const auto col = L.matrix().col(j);
  for (Eigen::Index i = 0; i < col.size(); ++i)
    if (i != j && std::abs(col[i]) > 1e-9) return std::nullopt;
  return col[j].real();
}

bool same_eigenvalue(double a, double b) { return std::abs(a - b) <= 1e-7 * std::max(1.0, std::abs(a)); }

using SymTensor = std::map<Monomial, NcPoly>;

void add_term(SymTensor& t, const Monomial& m, const NcPoly& p) {
  auto [it, fresh] = t.emplace(m, p);
  if (!fresh) it->second += p;
}

SymTensor multiply(const AlgebraSpec& spec, const SymTensor& x, const SymTensor& y) {
  SymTensor r;
  for (const auto& [mx, px] : x)
    for (const auto& [my, py] : y) {
      cplx ph = product_phase(spec.summand(0), mx.exponents, my.exponents).value();
      add_term(r, mx + my, ph * (px * py));
    }
  return r;
}

SymTensor star(const AlgebraSpec& spec, const SymTensor& x) {
  SymTensor r;
  for (const auto& [m, p] : x) add_term(r, -m, star_phase(spec.summand(0), m.exponents).value() * adjoint(p));
  return r;
}

void require_single_summand(const AlgebraSpec& spec) {
  if (spec.num_summands() != 1) throw Error("action ansatz requires a single toric summand");
}

}  // namespace

ActionAnsatz ActionAnsatz::full(const SpecPtr& spec, int radius, const std::vector<std::string>& prefixes) {
  require_single_summand(*spec);
  const int d = spec->rank(0);
  if (static_cast<int>(prefixes.size()) != d) throw Error("one symbol prefix per generator is required");
  ActionAnsatz a;
  a.generators.resize(static_cast<std::size_t>(d));
  for (int g = 0; g < d; ++g)
    for (const auto& e : lattice_box(d, radius)) {
      std::string name = prefixes[static_cast<std::size_t>(g)] + "_" + exponent_label(e);
      int s = a.symbols.add(name);
      a.generators[static_cast<std::size_t>(g)].push_back({Monomial{0, e}, NcPoly::letter(s)});
    }
  return a;
}

ActionAnsatz laplacian_filter(const ActionAnsatz& ansatz, const Laplacian& L) {
  require_single_summand(*L.basis().spec());
  const int d = L.basis().spec()->rank(0);
  ActionAnsatz out = ansatz;
  for (int g = 0; g < ansatz.num_generators(); ++g) {
    auto target = monomial_eigenvalue(L, generator_monomial(d, g));
    if (!target) throw Error("generator is not a Laplacian eigenvector");
    auto& terms = out.generators[static_cast<std::size_t>(g)];
    std::vector<ActionAnsatz::Term> kept;
    for (const auto& t : terms) {
      auto ev = monomial_eigenvalue(L, t.monomial);
      if (ev && same_eigenvalue(*ev, *target)) {
        kept.push_back(t);
        continue;
      }
      for (const auto& [w, c] : t.coefficient.terms())
        for (const auto& l : w) out.forced_zero.push_back(ansatz.symbols[l.symbol].name);
    }
    if (kept.empty())
      throw Error("no surviving terms for generator " + generator_name(d, g) + " after the Laplacian filter");
    terms = std::move(kept);
  }
  std::sort(out.forced_zero.begin(), out.forced_zero.end());
  out.forced_zero.erase(std::unique(out.forced_zero.begin(), out.forced_zero.end()), out.forced_zero.end());
  return out;
}

std::vector<NcPoly> derive_relations(const ActionAnsatz& ansatz, const SpectralModel& model, const Laplacian& L,
                                     int check_degree) {
  const AlgebraSpec& spec = *model.spec;
  require_single_summand(spec);
  const int d = spec.rank(0);
  if (ansatz.num_generators() != d) throw Error("ansatz and model disagree on the number of generators");
  if (check_degree > model.truncation) throw TruncationError("check degree exceeds the truncation");

  // Letters 0..d-1 are generators, d..2d-1 their adjoints.
  std::vector<SymTensor> images(static_cast<std::size_t>(2 * d));
  std::vector<std::pair<Monomial, cplx>> letter_monomial(static_cast<std::size_t>(2 * d));
  for (int g = 0; g < d; ++g) {
    SymTensor& t = images[static_cast<std::size_t>(g)];
    for (const auto& term : ansatz.generators[static_cast<std::size_t>(g)]) add_term(t, term.monomial, term.coefficient);
    images[static_cast<std::size_t>(d + g)] = star(spec, t);
    Monomial e = generator_monomial(d, g);
    letter_monomial[static_cast<std::size_t>(g)] = {e, 1.0};
    letter_monomial[static_cast<std::size_t>(d + g)] = {-e, star_phase(spec.summand(0), e.exponents).value()};
  }

  struct Entry {
    cplx scalar;
    SymTensor image;
  };
  std::map<Monomial, std::vector<Entry>> groups;

  std::vector<int> word;
  auto visit = [&](auto&& self, Monomial m, cplx c, const SymTensor& img) -> void {
    if (!word.empty()) groups[m].push_back({c, img});
    if (static_cast<int>(word.size()) == check_degree) return;
    for (int l = 0; l < 2 * d; ++l) {
      const auto& [lm, lc] = letter_monomial[static_cast<std::size_t>(l)];
      cplx ph = product_phase(spec.summand(0), m.exponents, lm.exponents).value();
      word.push_back(l);
      SymTensor next = word.size() == 1 ? images[static_cast<std::size_t>(l)]
                                        : multiply(spec, img, images[static_cast<std::size_t>(l)]);
      self(self, m + lm, c * lc * ph, next);
      word.pop_back();
    }
  };
  visit(visit, unit_monomial(d), 1.0, SymTensor{});

  std::vector<NcPoly> raw;
  auto emit = [&](const NcPoly& p) {
    NcPoly q = p.pruned();
    if (!q.is_zero()) raw.push_back(q);
  };
  for (const auto& [m, entries] : groups) {
    if (is_unit(m)) {
      for (const auto& e : entries) {
        SymTensor t = e.image;
        add_term(t, m, NcPoly::constant(-e.scalar));
        for (const auto& [b, p] : t) emit(p);
      }
      continue;
    }
    auto lam = monomial_eigenvalue(L, m);
    if (!lam) throw Error("monomial " + to_string(m) + " is not a Laplacian eigenvector");
    const Entry& ref = entries.front();
    for (const auto& [b, p] : ref.image) {
      auto ev = monomial_eigenvalue(L, b);
      if (!ev || !same_eigenvalue(*ev, *lam)) emit(p);
    }
    for (std::size_t i = 1; i < entries.size(); ++i) {
      SymTensor t;
      for (const auto& [b, p] : entries[i].image) add_term(t, b, ref.scalar * p);
      for (const auto& [b, p] : ref.image) add_term(t, b, -entries[i].scalar * p);
      for (const auto& [b, p] : t) emit(p);
    }
  }

  WordOrder order(&ansatz.symbols);
  std::vector<NcPoly> out;
  for (const auto& p : raw) {
    NcPoly q = monic(p, order);
    bool dup = std::any_of(out.begin(), out.end(), [&](const NcPoly& o) { return (o - q).pruned(1e-9).is_zero(); });
    if (!dup) out.push_back(q);
  }
  return out;
}

const Eigen::MatrixXcd& Realization::at(const std::string& name) const {
  auto it = matrices.find(name);
  if (it == matrices.end()) throw Error("realization has no matrix for symbol " + name);
  if (it->second.rows() != dim || it->second.cols() != dim) throw Error("matrix for " + name + " has wrong dimension");
  return it->second;
}

Eigen::MatrixXcd evaluate(const NcPoly& p, const SymbolTable& syms, const Realization& r, int legs) {
  if (p.max_leg() >= legs) throw Error("polynomial uses more tensor legs than requested");
  long total = 1;
  for (int l = 0; l < legs; ++l) total *= r.dim;
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(r.dim, r.dim);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(total, total);
  for (const auto& [w, c] : p.terms()) {
    std::vector<Eigen::MatrixXcd> factors(static_cast<std::size_t>(legs), I);
    for (const auto& l : w) {
      const Eigen::MatrixXcd& m = r.at(syms[l.symbol].name);
      auto& f = factors[static_cast<std::size_t>(l.leg)];
      f = l.adjoint ? Eigen::MatrixXcd(f * m.adjoint()) : Eigen::MatrixXcd(f * m);
    }
    Eigen::MatrixXcd k = factors[0];
    for (int l = 1; l < legs; ++l) k = Eigen::kroneckerProduct(k, factors[static_cast<std::size_t>(l)]).eval();
    out += c * k;
  }
  return out;
}

TensorElement ConcreteAction::generator_image(const SpecPtr& spec, int g) const {
  TensorElement t(spec, realization.dim);
  for (const auto& term : ansatz.generators.at(static_cast<std::size_t>(g)))
    t.add(term.monomial, evaluate(term.coefficient, ansatz.symbols, realization));
  return t;
}

ActionEvaluator::ActionEvaluator(const ConcreteAction& action, SpecPtr spec)
    : spec_(std::move(spec)), dim_(action.realization.dim) {
  require_single_summand(*spec_);
  if (action.ansatz.num_generators() != spec_->rank(0)) throw Error("action and algebra disagree on the number of generators");
  for (int g = 0; g < action.ansatz.num_generators(); ++g) gen_.push_back(action.generator_image(spec_, g));
}

const TensorElement& ActionEvaluator::power(int g, int e) {
  auto key = std::make_pair(g, e);
  if (auto it = powers_.find(key); it != powers_.end()) return it->second;
  TensorElement r = TensorElement::unit(spec_, dim_);
  if (e > 0) r = power(g, e - 1) * gen_[static_cast<std::size_t>(g)];
  if (e < 0) r = power(g, e + 1) * star(gen_[static_cast<std::size_t>(g)]);
  return powers_.emplace(key, std::move(r)).first->second;
}

const TensorElement& ActionEvaluator::of_monomial(const Monomial& m) {
  if (auto it = cache_.find(m); it != cache_.end()) return it->second;
  TensorElement r = TensorElement::unit(spec_, dim_);
  for (std::size_t j = 0; j < m.exponents.size(); ++j)
    if (m.exponents[j] != 0) r = r * power(static_cast<int>(j), m.exponents[j]);
  return cache_.emplace(m, std::move(r)).first->second;
}

TensorElement ActionEvaluator::of(const AlgebraElement& x) {
  TensorElement r(spec_, dim_);
  for (const auto& [m, c] : x.terms()) r += c * of_monomial(m);
  return r;
}

std::vector<std::pair<std::string, double>> VerificationReport::residuals() const {
  return {{"homomorphism", homomorphism},   {"star", star},
          {"laplacian_commutation", laplacian_commutation}, {"trace_invariance", trace_invariance},
          {"module_unitarity", module_unitarity}, {"density", density}};
}

bool VerificationReport::pass() const {
  for (const auto& [name, r] : residuals())
    if (!(r <= tolerance)) return false;
  return eigenspaces_checked > 0;
}

std::vector<int> checked_eigenspaces(const LaplacianData& data, int radius) {
  std::vector<int> out;
  for (std::size_t i = 0; i < data.spaces.size(); ++i) {
    const auto& sp = data.spaces[i];
    if (!sp.complete) continue;
    bool inside = std::all_of(sp.basis.begin(), sp.basis.end(), [&](const AlgebraElement& x) { return x.radius() <= radius; });
    if (inside) out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

int check_radius(const SpectralModel& model) { return std::max(1, safe_radius(model.truncation, 2)); }

double frob(const Eigen::MatrixXcd& m) { return m.norm(); }

}  // namespace

VerificationReport verify_concrete(const ConcreteAction& action, const SpectralModel& model, const LaplacianBuild& build,
                                   double tolerance) {
  const SpecPtr& spec = model.spec;
  ActionEvaluator alpha(action, spec);
  const int D = alpha.dim();
  const int d = spec->rank(0);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(D, D);
  VerificationReport rep;
  rep.tolerance = tolerance;

  const int rh = std::max(1, std::min(3, model.truncation - 1));
  std::vector<Monomial> probes;
  for (const auto& e : lattice_box(d, rh)) probes.push_back(Monomial{0, e});
  std::vector<Monomial> letters;
  for (int g = 0; g < d; ++g) {
    letters.push_back(generator_monomial(d, g));
    letters.push_back(-generator_monomial(d, g));
  }
  const auto& sm = spec->summand(0);
  for (const auto& x : letters)
    for (const auto& m : probes) {
      for (int side = 0; side < 2; ++side) {
        const Monomial& a = side ? m : x;
        const Monomial& b = side ? x : m;
        cplx ph = product_phase(sm, a.exponents, b.exponents).value();
        TensorElement lhs = alpha.of_monomial(a) * alpha.of_monomial(b);
        TensorElement rhs = ph * alpha.of_monomial(a + b);
        rep.homomorphism = std::max(rep.homomorphism, (lhs - rhs).norm());
        ++rep.products_checked;
      }
    }
  for (const auto& m : probes) {
    cplx ph = star_phase(sm, m.exponents).value();
    TensorElement lhs = ph * alpha.of_monomial(-m);
    rep.star = std::max(rep.star, (lhs - star(alpha.of_monomial(m))).norm());
  }

  const auto& L = build.L;
  for (int idx : checked_eigenspaces(build.data, check_radius(model))) {
    const Eigenspace& sp = build.data.spaces[static_cast<std::size_t>(idx)];
    const int n = sp.multiplicity();
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n * D, n * D);
    for (int j = 0; j < n; ++j) {
      const AlgebraElement& x = sp.basis[static_cast<std::size_t>(j)];
      TensorElement A = alpha.of(x);
      TensorElement inside(spec, D);
      double outside = 0.0;
      for (const auto& [m, s] : A.terms()) {
        if (L.basis().index_of(m) >= 0)
          inside.add(m, s);
        else
          outside = std::max(outside, s.norm());
      }
      TensorElement LA = apply_laplacian(L, inside);
      rep.laplacian_commutation = std::max({rep.laplacian_commutation, (LA - sp.eigenvalue * inside).norm(), outside});
      rep.trace_invariance = std::max(rep.trace_invariance, frob(slice_trace(A) - trace(x) * I));
      TensorElement rebuilt(spec, D);
      for (int k = 0; k < n; ++k) {
        TensorElement ek = TensorElement::embed(sp.basis[static_cast<std::size_t>(k)], D);
        Eigen::MatrixXcd v = module_inner(ek, A);
        V.block(k * D, j * D, D, D) = v;
        rebuilt += ek.times_right(v);
      }
      rep.laplacian_commutation = std::max(rep.laplacian_commutation, (A - rebuilt).norm());
      ++rep.eigenvectors_checked;
    }
    Eigen::MatrixXcd Vbar = V;
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) Vbar.block(k * D, j * D, D, D) = V.block(k * D, j * D, D, D).adjoint();
    const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(n * D, n * D);
    for (const Eigen::MatrixXcd* W : {&V, &Vbar}) {
      rep.module_unitarity = std::max(rep.module_unitarity, frob(W->adjoint() * *W - Id));
      rep.module_unitarity = std::max(rep.module_unitarity, frob(*W * W->adjoint() - Id));
    }
    Eigen::MatrixXcd pinv = V.completeOrthogonalDecomposition().pseudoInverse();
    rep.density = std::max(rep.density, frob(V * pinv - Id));
    ++rep.eigenspaces_checked;
  }
  return rep;
}

double module_isometry_residual(const ConcreteAction& action, const SpectralModel& model, const LaplacianBuild& build) {
  ActionEvaluator alpha(action, model.spec);
  const int D = alpha.dim();
  std::vector<AlgebraElement> xs;
  for (int idx : checked_eigenspaces(build.data, check_radius(model)))
    for (const auto& x : build.data.spaces[static_cast<std::size_t>(idx)].basis) xs.push_back(x);
  std::vector<TensorElement> images;
  for (const auto& x : xs) images.push_back(alpha.of(x));
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(D, D);
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      worst = std::max(worst, frob(module_inner(images[i], images[j]) - gns_inner(xs[i], xs[j]) * I));
  return worst;
}

double verify_coaction_square(const ConcreteAction& action, const SpecPtr& spec, const Presentation& pres) {
  ActionEvaluator alpha(action, spec);
  const Realization& r = action.realization;
  const int D = r.dim;
  double worst = 0.0;
  for (int g = 0; g < action.ansatz.num_generators(); ++g) {
    TensorElement lhs(spec, D * D), rhs(spec, D * D);
    for (const auto& term : action.ansatz.generators[static_cast<std::size_t>(g)]) {
      NcPoly coeff;
      for (const auto& [w, c] : term.coefficient.terms()) {
        Word renamed = w;
        for (auto& l : renamed) l.symbol = pres.symbols.require(action.ansatz.symbols[l.symbol].name);
        coeff.add(renamed, c);
      }
      Eigen::MatrixXcd s = evaluate(coeff, pres.symbols, r);
      for (const auto& [m, T] : alpha.of_monomial(term.monomial).terms())
        lhs.add(m, Eigen::kroneckerProduct(T, s).eval());
      rhs.add(term.monomial, evaluate(apply_coproduct(pres, coeff, 0), pres.symbols, r, 2));
    }
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

}  // namespace qiso
