// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum isometry toolkit for spectral triples on toric algebras"};
  qiso::cli::JobConfig c;
  int truncation = 0;
  app.add_option("--task", c.task, "laplacian | admissibility | derive | verify-action | check-presentation | equivariance")
      ->required();
  app.add_option("--model", c.model, "model JSON");
  app.add_option("--action", c.action, "action JSON");
  app.add_option("--presentation", c.presentation, "presentation JSON");
  auto* trunc = app.add_option("--truncation", truncation, "override the model truncation N");
  app.add_option("--tolerance", c.tolerance, "residual tolerance");
  app.add_option("--degree", c.degree, "word length for derive, form degree for equivariance");
  app.add_option("--out", c.out, "report path");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : qiso::cli::kConfigError;
  }
  if (trunc->count()) c.truncation = truncation;
  return qiso::cli::run(c, std::cout).status;
}
