#pragma once

#include <nlohmann/json.hpp>

#include "meshc/compiler.hpp"
#include "meshc/coupled.hpp"

namespace meshc {

/// Raised for structurally invalid files (wrong keys, ragged rows, ...).
struct ParseError : Error {
  using Error::Error;
};

nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

nlohmann::json layout_to_json(const ChipLayout& l);
ChipLayout layout_from_json(const nlohmann::json& j);

nlohmann::json assignment_to_json(const AngleAssignment& a);
AngleAssignment assignment_from_json(const nlohmann::json& j);

nlohmann::json coupled_to_json(const CoupledCircuit& cc);
CoupledCircuit coupled_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace meshc
