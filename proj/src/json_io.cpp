#include "meshc/json_io.hpp"

#include <fstream>

namespace meshc {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing key \"") + key + "\"");
  return *it;
}

int int_field(const json& j, const char* key) {
  const json& f = field(j, key);
  if (!f.is_number_integer())
    throw ParseError(std::string("key \"") + key + "\" must be an integer");
  return f.get<int>();
}

}  // namespace

json matrix_to_json(const Mat& m) {
  json data = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    data.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Mat matrix_from_json(const json& j) {
  const int rows = int_field(j, "rows");
  const int cols = int_field(j, "cols");
  const json& data = field(j, "data");
  if (!data.is_array() || static_cast<int>(data.size()) != rows)
    throw ParseError("matrix data row count mismatch");
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = data[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ParseError("ragged matrix row " + std::to_string(i));
    for (int c = 0; c < cols; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        throw ParseError("matrix entry must be [re, im] at row " +
                         std::to_string(i));
      m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json circuit_to_json(const Circuit& c) {
  json elems = json::array();
  for (const auto& e : c.elements()) {
    json je;
    switch (e.kind) {
      case CircuitElement::Kind::MZI:
        je = {{"kind", "mzi"},
              {"modes", {e.mode_low, e.mode_high}},
              {"theta", e.params.theta},
              {"phi", e.params.phi},
              {"active", e.active}};
        if (e.reversed) je["reversed"] = true;
        break;
      case CircuitElement::Kind::PhaseShifter:
        je = {{"kind", "phase"}, {"mode", e.mode_low}, {"phi", e.params.phi}};
        break;
      case CircuitElement::Kind::Coupling:
        je = {{"kind", "coupling"}, {"perm", e.perm}};
        break;
      case CircuitElement::Kind::ChipBlock:
        je = {{"kind", "block"},
              {"modes", e.block_modes},
              {"circuit", circuit_to_json(*e.block)}};
        break;
    }
    elems.push_back(std::move(je));
  }
  return {{"modes", c.modes()}, {"elements", std::move(elems)}};
}

Circuit circuit_from_json(const json& j) {
  Circuit c(int_field(j, "modes"));
  for (const json& je : field(j, "elements")) {
    const std::string kind = field(je, "kind").get<std::string>();
    if (kind == "mzi") {
      const json& modes = field(je, "modes");
      if (!modes.is_array() || modes.size() != 2)
        throw ParseError("mzi element needs two modes");
      CircuitElement e = CircuitElement::mzi(
          modes[0].get<int>(), modes[1].get<int>(),
          {field(je, "theta").get<double>(), field(je, "phi").get<double>()},
          je.value("active", true), je.value("reversed", false));
      c.append(std::move(e));
    } else if (kind == "phase") {
      c.append(CircuitElement::phase(int_field(je, "mode"),
                                     field(je, "phi").get<double>()));
    } else if (kind == "coupling") {
      c.append(
          CircuitElement::coupling(field(je, "perm").get<std::vector<int>>()));
    } else if (kind == "block") {
      c.append(CircuitElement::chip_block(
          field(je, "modes").get<std::vector<int>>(),
          circuit_from_json(field(je, "circuit"))));
    } else {
      throw ParseError("unknown element kind \"" + kind + "\"");
    }
  }
  return c;
}

json layout_to_json(const ChipLayout& l) {
  json layers = json::array();
  for (const auto& layer : l.layers) {
    json jl = json::array();
    for (int i : layer) jl.push_back({i, i + 1});
    layers.push_back(std::move(jl));
  }
  return {{"modes", l.modes},
          {"layers", std::move(layers)},
          {"terminal_phase_layer", l.terminal_phase_layer}};
}

ChipLayout layout_from_json(const json& j) {
  ChipLayout l;
  l.modes = int_field(j, "modes");
  l.terminal_phase_layer = field(j, "terminal_phase_layer").get<bool>();
  for (const json& jl : field(j, "layers")) {
    std::vector<int> layer;
    for (const json& p : jl) {
      if (!p.is_array() || p.size() != 2)
        throw ParseError("layout slot must be a pair [i, i+1]");
      const int lo = p[0].get<int>();
      if (p[1].get<int>() != lo + 1)
        throw ParseError("layout slots must be adjacent pairs");
      layer.push_back(lo);
    }
    l.layers.push_back(std::move(layer));
  }
  l.validate();
  return l;
}

json assignment_to_json(const AngleAssignment& a) {
  json slots = json::array();
  for (const auto& s : a.slots)
    slots.push_back({{"layer", s.layer},
                     {"modes", {s.mode_low, s.mode_low + 1}},
                     {"theta", s.params.theta},
                     {"phi", s.params.phi},
                     {"active", s.active}});
  json j = {{"slots", std::move(slots)},
            {"terminal_phases", a.terminal_phases},
            {"used_depth", a.used_depth}};
  if (!a.residual_phases.empty()) j["residual_phases"] = a.residual_phases;
  return j;
}

AngleAssignment assignment_from_json(const json& j) {
  AngleAssignment a;
  for (const json& js : field(j, "slots")) {
    AngleAssignment::Slot s;
    s.layer = int_field(js, "layer");
    s.mode_low = field(js, "modes")[0].get<int>();
    s.params = {field(js, "theta").get<double>(),
                field(js, "phi").get<double>()};
    s.active = field(js, "active").get<bool>();
    a.slots.push_back(s);
  }
  a.terminal_phases = field(j, "terminal_phases").get<std::vector<double>>();
  if (j.contains("residual_phases"))
    a.residual_phases = j["residual_phases"].get<std::vector<double>>();
  a.used_depth = int_field(j, "used_depth");
  return a;
}

json coupled_to_json(const CoupledCircuit& cc) {
  json stages = json::array();
  for (const auto& st : cc.stages) {
    json blocks = json::array();
    for (const auto& b : st.blocks)
      blocks.push_back({{"modes", b.modes},
                        {"unitary", matrix_to_json(b.unitary)},
                        {"circuit", circuit_to_json(b.circuit)}});
    stages.push_back(
        {{"coupling", st.coupling.images}, {"blocks", std::move(blocks)}});
  }
  return {{"modes", cc.modes},
          {"cols", cc.cols},
          {"stages", std::move(stages)},
          {"phases", cc.phases}};
}

CoupledCircuit coupled_from_json(const json& j) {
  CoupledCircuit cc;
  cc.modes = int_field(j, "modes");
  cc.cols = int_field(j, "cols");
  cc.phases = field(j, "phases").get<std::vector<double>>();
  for (const json& js : field(j, "stages")) {
    CoupledStage st;
    st.coupling.images = field(js, "coupling").get<std::vector<int>>();
    for (const json& jb : field(js, "blocks")) {
      CoupledBlock b;
      b.modes = field(jb, "modes").get<std::vector<int>>();
      b.unitary = matrix_from_json(field(jb, "unitary"));
      b.circuit = circuit_from_json(field(jb, "circuit"));
      st.blocks.push_back(std::move(b));
    }
    cc.stages.push_back(std::move(st));
  }
  return cc;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open \"" + path + "\" for writing");
  out << j.dump(1) << "\n";
}

}  // namespace meshc
