// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <set>

#include "qiso/forms.hpp"
#include "qiso/isometry.hpp"

namespace qiso::cli {

namespace {

using io::json;

struct ConfigError : Error {
  using Error::Error;
};

const std::set<std::string> kTasks = {"laplacian",     "admissibility",      "derive",
                                      "verify-action", "check-presentation", "equivariance"};

SpectralModel load_model(const JobConfig& c) {
  if (c.model.empty()) throw ConfigError("--model is required for task " + c.task);
  SpectralModel m = io::model_from_json(io::read_file(c.model));
  if (c.truncation) m.truncation = *c.truncation;
  if (m.truncation < 4) throw ConfigError("truncation must be at least 4");
  return m;
}

ConcreteAction load_action(const JobConfig& c, bool need_realization) {
  if (c.action.empty()) throw ConfigError("--action is required for task " + c.task);
  ConcreteAction a = io::action_from_json(io::read_file(c.action));
  if (need_realization && a.realization.dim < 1) throw ConfigError("action file has no realization");
  return a;
}

Presentation load_presentation(const JobConfig& c) {
  if (c.presentation.empty()) throw ConfigError("--presentation is required for task " + c.task);
  return io::presentation_from_json(io::read_file(c.presentation));
}

NcPoly rename(const NcPoly& p, const SymbolTable& from, const SymbolTable& to) {
  NcPoly out;
  for (const auto& [w, c] : p.terms()) {
    Word r = w;
    for (auto& l : r) {
      int s = to.find(from[l.symbol].name);
      if (s < 0) throw ConfigError("presentation has no symbol " + from[l.symbol].name);
      l.symbol = s;
    }
    out.add(r, c);
  }
  return out;
}

int task_laplacian(const JobConfig& c, json& rep, std::ostream& os) {
  SpectralModel m = load_model(c);
  LaplacianBuild b = build_laplacian(m);
  rep["laplacian"] = io::report_json(b.data);
  rep["truncation"] = m.truncation;
  os << "laplacian: " << b.data.eigenvalues.size() << " eigenvalues in " << b.data.spaces.size() << " eigenspaces; leading:";
  for (Eigen::Index i = 0; i < std::min<Eigen::Index>(8, b.data.eigenvalues.size()); ++i)
    os << " " << io::round12(b.data.eigenvalues[i]);
  os << "\n";
  return kPass;
}

int task_admissibility(const JobConfig& c, json& rep, std::ostream& os) {
  SpectralModel m = load_model(c);
  LaplacianBuild b = build_laplacian(m);
  AdmissibilityReport r = check_admissibility(m, b, std::min(c.tolerance, 1e-9));
  rep["admissibility"] = io::report_json(r);
  os << "admissibility: kernel dimension " << r.kernel_dimension << ", " << (r.all_pass() ? "admissible" : "not admissible")
     << "\n";
  return r.all_pass() ? kPass : kFail;
}

int task_derive(const JobConfig& c, json& rep, std::ostream& os) {
  SpectralModel m = load_model(c);
  ConcreteAction a = load_action(c, false);
  if (a.ansatz.generators.empty()) throw ConfigError("no surviving terms: the ansatz is empty");
  LaplacianBuild b = build_laplacian(m);
  ActionAnsatz filtered;
  try {
    filtered = laplacian_filter(a.ansatz, b.L);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  std::vector<NcPoly> rels = derive_relations(filtered, m, b.L, c.degree);
  json list = json::array(), text = json::array();
  for (const auto& r : rels) {
    list.push_back(io::to_json(r, filtered.symbols));
    text.push_back(r.to_string(filtered.symbols));
  }
  rep["forced_zero"] = filtered.forced_zero;
  rep["relations"] = list;
  rep["relations_text"] = text;
  os << "derive: " << rels.size() << " relations, " << filtered.forced_zero.size() << " coefficients forced to zero\n";
  int status = kPass;
  if (!c.presentation.empty()) {
    Presentation p = load_presentation(c);
    std::vector<NcPoly> cands;
    for (const auto& r : rels) cands.push_back(rename(r, filtered.symbols, p.symbols));
    json verdicts = json::array();
    int reduced = 0;
    for (const auto& imp : implies(p, cands, 4)) {
      bool zero = imp.verdict == Verdict::ReducedToZero;
      reduced += zero;
      verdicts.push_back({{"reduced_to_zero", zero}, {"remainder", imp.remainder.to_string(p.symbols)},
                          {"bound_exceeded", imp.bound_exceeded}});
    }
    rep["implied"] = verdicts;
    os << "derive: " << reduced << "/" << rels.size() << " relations reduce to zero modulo " << p.name << "\n";
    if (reduced != static_cast<int>(rels.size())) status = kFail;
  }
  return status;
}

int task_verify(const JobConfig& c, json& rep, std::ostream& os) {
  SpectralModel m = load_model(c);
  ConcreteAction a = load_action(c, true);
  LaplacianBuild b = build_laplacian(m);
  VerificationReport r = verify_concrete(a, m, b, c.tolerance);
  double iso = module_isometry_residual(a, m, b);
  rep["verification"] = io::report_json(r);
  rep["module_isometry"] = io::number(iso);
  bool ok = r.pass() && iso <= c.tolerance;
  os << "verify-action:";
  for (const auto& [name, v] : r.residuals()) os << " " << name << "=" << io::round12(v);
  os << " module_isometry=" << io::round12(iso) << "\n";
  if (!c.presentation.empty()) {
    Presentation p = load_presentation(c);
    if (!p.has_coproduct()) throw ConfigError("presentation has no coproduct");
    double sq = verify_coaction_square(a, m.spec, p);
    rep["coaction_square"] = io::number(sq);
    os << "verify-action: coaction square residual " << io::round12(sq) << "\n";
    ok = ok && sq <= c.tolerance;
  }
  return ok ? kPass : kFail;
}

int task_presentation(const JobConfig& c, json& rep, std::ostream& os) {
  Presentation p = load_presentation(c);
  rep["relations"] = static_cast<int>(p.relations.size());
  if (!p.has_coproduct()) {
    os << "check-presentation: " << p.relations.size() << " relations, no coproduct\n";
    return kPass;
  }
  CoproductReport r = check_coproduct(p, 2 * std::max(c.degree, 3));
  rep["coproduct"] = io::report_json(r);
  os << "check-presentation: coassociative " << (r.coassociative ? "yes" : "no") << ", Hopf ideal "
     << (r.hopf_ideal ? "yes" : "not certified") << "\n";
  return r.ok() ? kPass : kFail;
}

int task_equivariance(const JobConfig& c, json& rep, std::ostream& os) {
  SpectralModel m = load_model(c);
  ConcreteAction a = load_action(c, true);
  LaplacianBuild b = build_laplacian(m);
  FormsOptions opt;
  opt.max_degree = c.degree;
  opt.max_energy = m.spec->rank(0) == 1 ? 4.0 : 2.0;
  FormsComplex forms(m, b, opt);
  EquivarianceReport r = check_equivariance(a, forms);
  rep["equivariance"] = io::report_json(r);
  os << "equivariance: commutation residual " << io::round12(r.commutation) << ", d^2 " << io::round12(r.d_squared) << "\n";
  return r.pass(c.tolerance) ? kPass : kFail;
}

}  // namespace

JobResult run(const JobConfig& c, std::ostream& summary) {
  JobResult res;
  res.report = {{"task", c.task}};
  try {
    if (!kTasks.count(c.task)) throw ConfigError("unknown task \"" + c.task + "\"");
    if (!(c.tolerance > 0.0 && c.tolerance <= 1e-2)) throw ConfigError("tolerance must lie in (0, 1e-2]");
    if (c.degree < 1) throw ConfigError("degree must be positive");
    if (c.task == "laplacian") res.status = task_laplacian(c, res.report, summary);
    if (c.task == "admissibility") res.status = task_admissibility(c, res.report, summary);
    if (c.task == "derive") res.status = task_derive(c, res.report, summary);
    if (c.task == "verify-action") res.status = task_verify(c, res.report, summary);
    if (c.task == "check-presentation") res.status = task_presentation(c, res.report, summary);
    if (c.task == "equivariance") res.status = task_equivariance(c, res.report, summary);
  } catch (const ConfigError& e) {
    res.status = kConfigError;
    res.report["error"] = e.what();
  } catch (const io::ParseError& e) {
    res.status = kConfigError;
    res.report["error"] = e.what();
  } catch (const Error& e) {
    res.status = kConfigError;
    res.report["error"] = e.what();
  }
  if (res.status == kConfigError) summary << "error: " << res.report["error"].get<std::string>() << "\n";
  res.report["status"] = res.status;
  if (!c.out.empty()) {
    try {
      io::write_file(c.out, res.report);
    } catch (const Error& e) {
      summary << "error: " << e.what() << "\n";
      res.status = kConfigError;
    }
  }
  return res;
}

}  // namespace qiso::cli
