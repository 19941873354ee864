// SPDX-License-Identifier: Apache-2.0
//
// Regenerates the bundled example files: make_data <directory>.
#include <iostream>

#include "qiso/io.hpp"
#include "qiso/models.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_data <directory>\n";
    return 2;
  }
  using namespace qiso;
  const std::string dir = argv[1];
  auto put = [&](const std::string& name, const io::json& j) { io::write_file(dir + "/" + name, j); };
  // Matrices make action files large; they are written without indentation.
  auto put_compact = [&](const std::string& name, const io::json& j) { io::write_file(dir + "/" + name, j, -1); };

  put("circle.json", io::to_json(models::circle(16)));
  put("torus.json", io::to_json(models::torus(6)));
  put("disconnected.json", io::to_json(models::disconnected(8)));

  put_compact("circle_action.json", io::to_json(models::circle_action()));
  put_compact("double_torus_action.json", io::to_json(models::double_torus_action()));
  put_compact("full_torus_action.json", io::to_json(models::full_torus_action(false)));
  put_compact("full_torus_action_even_twist.json", io::to_json(models::full_torus_action(true)));

  ConcreteAction circle_ansatz;
  circle_ansatz.ansatz = ActionAnsatz::full(models::circle(4).spec, 2, {"A"});
  circle_ansatz.realization.dim = 0;
  io::json ansatz = io::to_json(circle_ansatz);
  ansatz.erase("realization");
  put("circle_ansatz.json", ansatz);
  put("empty_ansatz.json", {{"symbols", io::json::array()}, {"generators", io::json::array({io::json::array()})}});

  put("circle_isometries.json", io::to_json(models::circle_isometry_presentation()));
  put("semidirect.json", io::to_json(models::semidirect_presentation()));
  put("double_torus.json", io::to_json(models::double_torus_presentation()));
  put("full_torus.json", io::to_json(models::full_torus_presentation()));
  return 0;
}
