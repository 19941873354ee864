// SPDX-License-Identifier: Apache-2.0
//
// JSON formats for models, actions, presentations and reports.
//
// Model:        {"algebra": {"summands": [{"rank": d, "phases": [...]}]},
//                "dirac": {"kind": "circle" | "torus2"}, "truncation": N}
//               A phase is "p/q" (exact turns) or [re, im].
// Polynomial:   [{"re": x, "im": y, "word": ["A0", "B0*"]}, ...]
// Action:       {"symbols": [...], "generators": [[{"exponents": [..], "coefficient": poly}]],
//                "realization": {"dim": n, "matrices": {"A0": matrix, ...}}}
// Presentation: {"name": s, "symbols": [{"name": s, "weight": w}], "relations": [poly],
//                "coproduct": {"A0": [{"re", "im", "left": [...], "right": [...]}]}}
// Matrix:       {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
//
// Output is deterministic: keys sorted, floats rounded to 12 significant digits.
#pragma once

#include <json.hpp>

#include <string>

#include "qiso/forms.hpp"
#include "qiso/isometry.hpp"
#include "qiso/presentation.hpp"
#include "qiso/spectral_triple.hpp"

namespace qiso::io {

using json = nlohmann::json;

/// Raised for malformed or inconsistent input files.
struct ParseError : Error {
  using Error::Error;
};

double round12(double x);
json number(double x);

json to_json(const AlgebraSpec& spec);
AlgebraSpec spec_from_json(const json& j);

json to_json(const SpectralModel& model);
SpectralModel model_from_json(const json& j);

json to_json(const AlgebraElement& x);
AlgebraElement element_from_json(const json& j, SpecPtr spec, int truncation);

json to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j);

json to_json(const NcPoly& p, const SymbolTable& syms);
NcPoly poly_from_json(const json& j, const SymbolTable& syms);

json to_json(const ConcreteAction& a);
/// A realization is optional; without one only symbolic tasks are possible.
ConcreteAction action_from_json(const json& j);
json to_json(const Presentation& p);
Presentation presentation_from_json(const json& j);

json report_json(const LaplacianData& data, int max_values = -1);
json report_json(const AdmissibilityReport& r);
json report_json(const VerificationReport& r);
json report_json(const CoproductReport& r);
json report_json(const EquivarianceReport& r);

json read_file(const std::string& path);
/// Two-space indentation (or compact when indent < 0) and a trailing newline.
void write_file(const std::string& path, const json& j, int indent = 2);
std::string dump(const json& j, int indent = 2);

}  // namespace qiso::io
