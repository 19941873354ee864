// SPDX-License-Identifier: Apache-2.0
#include "qiso/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qiso::io {

namespace {

template <typename T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field \"") + key + "\": " + e.what());
  }
}

json phase_json(const Phase& p) {
  if (p.is_exact()) return std::to_string(p.num()) + "/" + std::to_string(p.den());
  cplx z = p.value();
  return json::array({number(z.real()), number(z.imag())});
}

Phase phase_from(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Phase::rational(std::stoll(s), 1);
      return Phase::rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw ParseError("bad phase \"" + s + "\"");
    }
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    cplx z(j[0].get<double>(), j[1].get<double>());
    if (std::abs(std::abs(z) - 1.0) > 1e-9) throw ParseError("phase must have modulus 1");
    return Phase::from_complex(z);
  }
  throw ParseError("phase must be \"p/q\" or [re, im]");
}

json word_json(const Word& w, const SymbolTable& syms) {
  json out = json::array();
  for (const auto& l : w) out.push_back(syms[l.symbol].name + (l.adjoint ? "*" : ""));
  return out;
}

Word word_from(const json& j, const SymbolTable& syms, int leg) {
  if (!j.is_array()) throw ParseError("word must be a list of symbol tokens");
  Word w;
  for (const auto& t : j) {
    if (!t.is_string()) throw ParseError("word tokens must be strings");
    try {
      w.push_back(parse_letter(syms, t.get<std::string>(), leg));
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  return w;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round12(x);
}

json to_json(const AlgebraSpec& spec) {
  json summands = json::array();
  for (const auto& s : spec.summands()) {
    json phases = json::array();
    for (const auto& p : s.phases) phases.push_back(phase_json(p));
    summands.push_back({{"rank", s.rank}, {"phases", phases}});
  }
  return {{"summands", summands}};
}

AlgebraSpec spec_from_json(const json& j) {
  auto list = get<json>(j, "summands");
  if (!list.is_array() || list.empty()) throw ParseError("\"summands\" must be a non-empty list");
  std::vector<ToricSummand> out;
  for (const auto& s : list) {
    ToricSummand t;
    t.rank = get<int>(s, "rank");
    if (t.rank < 1) throw ParseError("summand rank must be positive");
    auto phases = get<json>(s, "phases");
    if (!phases.is_array() || phases.size() != static_cast<std::size_t>(t.rank * t.rank))
      throw ParseError("a rank-d summand needs d*d phases");
    for (const auto& p : phases) t.phases.push_back(phase_from(p));
    out.push_back(std::move(t));
  }
  try {
    return AlgebraSpec(std::move(out));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

json to_json(const SpectralModel& model) {
  return {{"algebra", to_json(*model.spec)}, {"dirac", {{"kind", model.dirac.kind}}}, {"truncation", model.truncation}};
}

SpectralModel model_from_json(const json& j) {
  SpectralModel m;
  m.spec = std::make_shared<const AlgebraSpec>(spec_from_json(get<json>(j, "algebra")));
  m.truncation = get<int>(j, "truncation");
  const std::string kind = get<std::string>(get<json>(j, "dirac"), "kind");
  if (kind == "circle")
    m.dirac = DiracStructure::circle();
  else if (kind == "torus2")
    m.dirac = DiracStructure::torus2();
  else
    throw ParseError("unknown dirac kind \"" + kind + "\"");
  try {
    m.validate();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return m;
}

json to_json(const AlgebraElement& x) {
  json out = json::array();
  for (const auto& [m, c] : x.terms())
    out.push_back({{"summand", m.summand}, {"exponents", m.exponents}, {"re", number(c.real())}, {"im", number(c.imag())}});
  return out;
}

AlgebraElement element_from_json(const json& j, SpecPtr spec, int truncation) {
  if (!j.is_array()) throw ParseError("element must be a list of terms");
  AlgebraElement x(spec, truncation);
  for (const auto& t : j) {
    Monomial m{t.value("summand", 0), get<std::vector<int>>(t, "exponents")};
    if (m.summand < 0 || m.summand >= spec->num_summands() || static_cast<int>(m.exponents.size()) != spec->rank(m.summand))
      throw ParseError("term does not match the algebra");
    x.add(m, cplx(get<double>(t, "re"), t.value("im", 0.0)));
  }
  return x;
}

json to_json(const Eigen::MatrixXcd& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back({number(m(r, c).real()), number(m(r, c).imag())});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  const int rows = get<int>(j, "rows"), cols = get<int>(j, "cols");
  auto data = get<json>(j, "data");
  if (rows < 0 || cols < 0 || !data.is_array() || data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    throw ParseError("matrix data does not match its shape");
  Eigen::MatrixXcd m(rows, cols);
  std::size_t i = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c, ++i) {
      const auto& e = data[i];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("matrix entries must be [re, im]");
      m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

json to_json(const NcPoly& p, const SymbolTable& syms) {
  json out = json::array();
  for (const auto& [w, c] : p.terms())
    out.push_back({{"re", number(c.real())}, {"im", number(c.imag())}, {"word", word_json(w, syms)}});
  return out;
}

NcPoly poly_from_json(const json& j, const SymbolTable& syms) {
  if (!j.is_array()) throw ParseError("polynomial must be a list of terms");
  NcPoly p;
  for (const auto& t : j) p.add(word_from(get<json>(t, "word"), syms, 0), cplx(get<double>(t, "re"), t.value("im", 0.0)));
  return p;
}

json to_json(const ConcreteAction& a) {
  const auto& syms = a.ansatz.symbols;
  json symbols = json::array();
  for (const auto& s : syms.symbols()) symbols.push_back(s.name);
  json gens = json::array();
  for (const auto& g : a.ansatz.generators) {
    json terms = json::array();
    for (const auto& t : g) terms.push_back({{"exponents", t.monomial.exponents}, {"coefficient", to_json(t.coefficient, syms)}});
    gens.push_back(terms);
  }
  json mats = json::object();
  for (const auto& [name, m] : a.realization.matrices) mats[name] = to_json(m);
  return {{"symbols", symbols}, {"generators", gens}, {"realization", {{"dim", a.realization.dim}, {"matrices", mats}}}};
}

ConcreteAction action_from_json(const json& j) {
  ConcreteAction a;
  auto& syms = a.ansatz.symbols;
  for (const auto& s : get<json>(j, "symbols")) {
    if (!s.is_string()) throw ParseError("symbols must be strings");
    if (syms.find(s.get<std::string>()) >= 0) throw ParseError("duplicate symbol " + s.get<std::string>());
    syms.add(s.get<std::string>());
  }
  auto gens = get<json>(j, "generators");
  if (!gens.is_array()) throw ParseError("\"generators\" must be a list");
  for (const auto& g : gens) {
    if (!g.is_array()) throw ParseError("each generator is a list of terms");
    std::vector<ActionAnsatz::Term> terms;
    for (const auto& t : g) {
      Monomial m{0, get<std::vector<int>>(t, "exponents")};
      if (m.exponents.size() != gens.size()) throw ParseError("exponent vectors must match the number of generators");
      NcPoly c;
      if (t.contains("symbol"))
        c = poly_from_json(json::array({{{"re", 1.0}, {"word", {t["symbol"]}}}}), syms);
      else
        c = poly_from_json(get<json>(t, "coefficient"), syms);
      terms.push_back({m, c});
    }
    a.ansatz.generators.push_back(std::move(terms));
  }
  if (j.contains("realization")) {
    const auto& r = j["realization"];
    a.realization.dim = get<int>(r, "dim");
    if (a.realization.dim < 1) throw ParseError("realization dimension must be positive");
    const json mats = get<json>(r, "matrices");
    for (const auto& [name, m] : mats.items()) {
      Eigen::MatrixXcd mat = matrix_from_json(m);
      if (mat.rows() != a.realization.dim || mat.cols() != a.realization.dim)
        throw ParseError("matrix for " + name + " does not match the realization dimension");
      a.realization.matrices[name] = mat;
    }
  } else {
    a.realization.dim = 0;
  }
  return a;
}

json to_json(const Presentation& p) {
  const auto& syms = p.symbols;
  json symbols = json::array();
  for (const auto& s : syms.symbols()) symbols.push_back({{"name", s.name}, {"weight", s.weight}});
  json rels = json::array();
  for (const auto& r : p.relations) rels.push_back(to_json(r, syms));
  json cop = json::object();
  for (const auto& [s, d] : p.coproduct) {
    json terms = json::array();
    for (const auto& [w, c] : d.terms()) {
      Word left, right;
      for (const auto& l : w) (l.leg == 0 ? left : right).push_back(l);
      terms.push_back({{"re", number(c.real())}, {"im", number(c.imag())}, {"left", word_json(left, syms)}, {"right", word_json(right, syms)}});
    }
    cop[syms[s].name] = terms;
  }
  return {{"name", p.name}, {"symbols", symbols}, {"relations", rels}, {"coproduct", cop}};
}

Presentation presentation_from_json(const json& j) {
  Presentation p;
  p.name = j.value("name", "");
  for (const auto& s : get<json>(j, "symbols")) {
    std::string name = s.is_string() ? s.get<std::string>() : get<std::string>(s, "name");
    int weight = s.is_object() ? s.value("weight", 1) : 1;
    if (p.symbols.find(name) >= 0) throw ParseError("duplicate symbol " + name);
    p.symbols.add(name, weight);
  }
  for (const auto& r : get<json>(j, "relations")) p.relations.push_back(poly_from_json(r, p.symbols));
  if (j.contains("coproduct")) {
    for (const auto& [name, terms] : j["coproduct"].items()) {
      int s = p.symbols.find(name);
      if (s < 0) throw ParseError("coproduct for unknown symbol " + name);
      NcPoly d;
      for (const auto& t : terms)
        d.add(multiply_words(word_from(get<json>(t, "left"), p.symbols, 0), word_from(get<json>(t, "right"), p.symbols, 1)),
              cplx(get<double>(t, "re"), t.value("im", 0.0)));
      p.coproduct[s] = d;
    }
  }
  return p;
}

json report_json(const LaplacianData& data, int max_values) {
  json eig = json::array();
  for (Eigen::Index i = 0; i < data.eigenvalues.size() && (max_values < 0 || i < max_values); ++i)
    eig.push_back(number(data.eigenvalues[i]));
  json spaces = json::array();
  for (const auto& sp : data.spaces)
    spaces.push_back({{"eigenvalue", number(sp.eigenvalue)}, {"multiplicity", sp.multiplicity()}, {"complete", sp.complete}});
  return {{"eigenvalues", eig}, {"eigenspaces", spaces}, {"grouping_tolerance", number(data.grouping_tolerance)}};
}

json report_json(const AdmissibilityReport& r) {
  return {{"compact_resolvent", r.compact_resolvent},
          {"invariance_residual", number(r.invariance_residual)},
          {"eigenvector_residual", number(r.eigenvector_residual)},
          {"kernel_dimension", r.kernel_dimension},
          {"kernel_spanned_by_unit", r.kernel_spanned_by_unit},
          {"connected", r.connected()},
          {"density", r.density},
          {"self_adjoint_residual", number(r.self_adjoint_residual)},
          {"max_eigenvalue", number(r.max_eigenvalue)},
          {"star_compatibility_residual", number(r.star_compatibility_residual)},
          {"tolerance", number(r.tolerance)},
          {"pass", r.all_pass()}};
}

json report_json(const VerificationReport& r) {
  json res = json::object();
  for (const auto& [name, v] : r.residuals()) res[name] = number(v);
  return {{"residuals", res},
          {"tolerance", number(r.tolerance)},
          {"eigenspaces_checked", r.eigenspaces_checked},
          {"eigenvectors_checked", r.eigenvectors_checked},
          {"products_checked", r.products_checked},
          {"pass", r.pass()}};
}

json report_json(const CoproductReport& r) {
  return {{"coassociative", r.coassociative},
          {"hopf_ideal", r.hopf_ideal},
          {"coassociativity_failures", r.coassociativity_failures},
          {"ideal_failures", r.ideal_failures},
          {"bound_exceeded", r.bound_exceeded},
          {"pass", r.ok()}};
}

json report_json(const EquivarianceReport& r) {
  json unit = json::array();
  for (double u : r.unitarity) unit.push_back(number(u));
  return {{"dimensions", r.dimensions},
          {"unitarity", unit},
          {"leakage", number(r.leakage)},
          {"well_definedness", number(r.well_definedness)},
          {"commutation", number(r.commutation)},
          {"d_squared", number(r.d_squared)},
          {"dprime_self_adjoint", number(r.dprime_self_adjoint)}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string dump(const json& j, int indent) { return j.dump(indent) + "\n"; }

void write_file(const std::string& path, const json& j, int indent) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << dump(j, indent);
}

}  // namespace qiso::io
