#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <sstream>

#include "meshc/analysis.hpp"
#include "meshc/json_io.hpp"
#include "meshc/synthesis.hpp"

namespace {

using meshc::Mat;
using nlohmann::json;

constexpr double kTol = 1e-8;

struct ExitCode {
  static constexpr int kOk = 0;
  static constexpr int kBadInput = 1;
  static constexpr int kInfeasible = 2;
  static constexpr int kNumeric = 3;
};

bool g_json_errors = false;

void report_error(const std::string& kind, const std::string& message,
                  const json& extra = json::object()) {
  if (g_json_errors) {
    json j = extra;
    j["error"] = kind;
    j["message"] = message;
    std::cerr << j.dump() << "\n";
  } else {
    std::cerr << "error (" << kind << "): " << message << "\n";
    for (auto it = extra.begin(); it != extra.end(); ++it)
      std::cerr << "  " << it.key() << ": " << it.value().dump() << "\n";
  }
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(1) << "\n";
  else
    meshc::save_json_file(out_path, j);
}

// "lo:hi:steps" -> inclusive linspace
std::vector<double> parse_grid(const std::string& spec) {
  double lo = 0, hi = 0;
  int steps = 0;
  char c1 = 0, c2 = 0;
  std::istringstream ss(spec);
  if (!(ss >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' ||
      steps < 1)
    throw meshc::ParseError("bad grid spec \"" + spec +
                            "\" (want lo:hi:steps)");
  std::vector<double> g;
  for (int i = 0; i < steps; ++i)
    g.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
  return g;
}

int run(int argc, char** argv) {
  CLI::App app{"MZI mesh synthesis and interferometer design toolkit"};
  app.require_subcommand(1);
  app.add_flag("--json-errors", g_json_errors,
               "emit machine-readable errors on stderr");

  // synth
  auto* synth = app.add_subcommand("synth", "full unitary synthesis");
  std::string scheme = "clements", unitary_path, out_path;
  synth->add_option("--scheme", scheme, "clements|reck")
      ->check(CLI::IsMember({"clements", "reck"}));
  synth->add_option("--unitary", unitary_path, "matrix JSON")->required();
  synth->add_option("-o,--output", out_path, "output file (default stdout)");

  // bs-synth
  auto* bs = app.add_subcommand("bs-synth", "partial isometry synthesis");
  std::string iso_path;
  bs->add_option("--isometry", iso_path, "matrix JSON")->required();
  bs->add_option("-o,--output", out_path, "output file");

  // compile
  auto* comp = app.add_subcommand("compile", "compile onto a chip layout");
  std::string layout_path;
  bool shallowest = false;
  comp->add_option("--layout", layout_path, "layout JSON")->required();
  comp->add_option("--unitary", unitary_path, "matrix JSON")->required();
  comp->add_flag("--shallowest", shallowest, "minimize used depth");
  comp->add_option("-o,--output", out_path, "output file");

  // coupled
  auto* coup = app.add_subcommand("coupled", "coupled-chip greedy design");
  int chip_size = 2;
  bool longrange = false;
  coup->add_option("--isometry", iso_path, "matrix JSON")->required();
  coup->add_option("--chip-size", chip_size, "chip size k");
  coup->add_flag("--longrange", longrange, "k = 2 long-range MZI variant");
  coup->add_option("-o,--output", out_path, "output file");

  // depth
  auto* depth = app.add_subcommand("depth", "depth recurrence and bounds");
  long long m = 0;
  int n = 0;
  std::string bound = "all";
  depth->add_option("--m", m, "modes")->required();
  depth->add_option("--n", n, "photons")->required();
  depth->add_option("--bound", bound, "ineq|analytic|exact|all")
      ->check(CLI::IsMember({"ineq", "analytic", "exact", "all"}));

  // transmission
  auto* trans = app.add_subcommand("transmission", "loss scans");
  double eta_mzi = -1, eta_c = -1, iso_target = -1;
  std::string heatmap_spec, iso_grid = "0.9:1:11";
  int k_cap = 0;
  trans->add_option("--m", m, "modes")->required();
  trans->add_option("--n", n, "photons")->required();
  trans->add_option("--eta-mzi", eta_mzi, "per-MZI transmission");
  trans->add_option("--eta-c", eta_c, "per-coupling transmission");
  trans->add_option("--heatmap", heatmap_spec,
                    "emLo:emHi:N,ecLo:ecHi:M grid scan");
  trans->add_option("--iso-curve", iso_target, "target per-photon eta");
  trans->add_option("--grid", iso_grid, "eta_mzi grid for --iso-curve");
  trans->add_option("--k-cap", k_cap, "largest chip size scanned (0 = auto)");

  // random
  auto* rnd = app.add_subcommand("random", "deterministic Haar sample");
  std::uint64_t seed = 0;
  int rn = 0;
  rnd->add_option("--m", m, "modes")->required();
  rnd->add_option("--n", rn, "columns (isometry; default full unitary)");
  rnd->add_option("--seed", seed, "RNG seed")->required();
  rnd->add_option("-o,--output", out_path, "output file");

  // verify
  auto* ver = app.add_subcommand("verify", "check a circuit against a target");
  std::string circuit_path;
  ver->add_option("--circuit", circuit_path, "circuit JSON")->required();
  ver->add_option("--unitary", unitary_path, "target matrix JSON");
  ver->add_option("--isometry", iso_path, "target isometry JSON");

  CLI11_PARSE(app, argc, argv);

  if (synth->parsed()) {
    meshc::UnitaryMatrix u(
        meshc::matrix_from_json(meshc::load_json_file(unitary_path)));
    meshc::Circuit c = scheme == "clements" ? meshc::synth_clements(u)
                                            : meshc::synth_reck(u);
    if ((c.evaluate() - u.mat()).norm() > kTol)
      throw meshc::NumericError("synthesized circuit fails reconstruction");
    emit(meshc::circuit_to_json(c), out_path);
  } else if (bs->parsed()) {
    meshc::Isometry v(
        meshc::matrix_from_json(meshc::load_json_file(iso_path)));
    meshc::Circuit c = meshc::synth_boson_sampling(v);
    if ((c.evaluate().leftCols(v.cols()) - v.mat()).norm() > kTol)
      throw meshc::NumericError("synthesized circuit fails reconstruction");
    emit(meshc::circuit_to_json(c), out_path);
  } else if (comp->parsed()) {
    meshc::UnitaryMatrix u(
        meshc::matrix_from_json(meshc::load_json_file(unitary_path)));
    meshc::ChipLayout layout =
        meshc::layout_from_json(meshc::load_json_file(layout_path));
    meshc::CompileResult r = shallowest ? meshc::shallowest_compile(u, layout)
                                        : meshc::compile(u, layout);
    if (!r.ok()) {
      report_error("infeasible",
                   "target unitary is not implementable on this layout",
                   {{"residual_permutation", r.infeasible->residual.images}});
      return ExitCode::kInfeasible;
    }
    emit(meshc::assignment_to_json(*r.assignment), out_path);
  } else if (coup->parsed()) {
    meshc::Isometry v(
        meshc::matrix_from_json(meshc::load_json_file(iso_path)));
    if (longrange) {
      meshc::LongrangeResult lr = meshc::greedy_longrange(v);
      json j = meshc::circuit_to_json(lr.circuit);
      j["layer_count"] = lr.layer_count;
      emit(j, out_path);
    } else {
      emit(meshc::coupled_to_json(meshc::greedy_coupled(v, chip_size)),
           out_path);
    }
  } else if (depth->parsed()) {
    if (bound == "ineq") {
      std::cout << meshc::depth_bound_inequality(m, n) << "\n";
    } else if (bound == "analytic") {
      std::cout << meshc::depth_bound_analytic(m, n).k << "\n";
    } else if (bound == "exact") {
      std::cout << meshc::tk_simulate(m, n).k_exact << "\n";
    } else {
      std::cout << "m,n,K_exact,K_ineq,K_analytic\n"
                << m << "," << n << "," << meshc::tk_simulate(m, n).k_exact
                << "," << meshc::depth_bound_inequality(m, n) << ","
                << meshc::depth_bound_analytic(m, n).k << "\n";
    }
  } else if (trans->parsed()) {
    std::cout.precision(12);
    if (!heatmap_spec.empty()) {
      auto comma = heatmap_spec.find(',');
      if (comma == std::string::npos)
        throw meshc::ParseError("heatmap spec wants emLo:emHi:N,ecLo:ecHi:M");
      auto em_grid = parse_grid(heatmap_spec.substr(0, comma));
      auto ec_grid = parse_grid(heatmap_spec.substr(comma + 1));
      std::cout << "eta_mzi,eta_c,k_star,eta_star\n";
      for (const auto& cell : meshc::heatmap(m, n, em_grid, ec_grid, k_cap))
        std::cout << cell.eta_mzi << "," << cell.eta_c << ","
                  << (cell.best.single_chip ? 0 : cell.best.k) << ","
                  << cell.best.eta << "\n";
    } else if (iso_target > 0) {
      auto curve = meshc::iso_transmission_curve(m, n, iso_target,
                                                 parse_grid(iso_grid), k_cap);
      std::cout << "eta_mzi,eta_c_required,k_star\n";
      for (const auto& pt : curve.points)
        if (pt.attainable)
          std::cout << pt.eta_mzi << "," << pt.eta_c_required << ","
                    << pt.k_star << "\n";
        else
          std::cout << pt.eta_mzi << ",unattainable,\n";
      if (curve.has_cutoff)
        std::cerr << "cutoff eta_mzi: " << curve.cutoff_eta_mzi << "\n";
    } else if (eta_mzi > 0 && eta_c > 0) {
      meshc::ChipChoice best =
          meshc::optimal_chip_size(m, n, eta_mzi, eta_c, k_cap);
      std::cout << "eta_mzi,eta_c,k_star,eta_star\n"
                << eta_mzi << "," << eta_c << ","
                << (best.single_chip ? 0 : best.k) << "," << best.eta << "\n";
    } else {
      throw meshc::ParseError(
          "transmission needs --eta-mzi/--eta-c, --heatmap or --iso-curve");
    }
  } else if (rnd->parsed()) {
    Mat out = rn > 0
                  ? meshc::random_isometry(static_cast<int>(m), rn, seed).mat()
                  : meshc::haar_random_unitary(static_cast<int>(m), seed).mat();
    emit(meshc::matrix_to_json(out), out_path);
  } else if (ver->parsed()) {
    if (unitary_path.empty() == iso_path.empty())
      throw meshc::ParseError("verify needs exactly one of --unitary / "
                              "--isometry");
    meshc::Circuit c =
        meshc::circuit_from_json(meshc::load_json_file(circuit_path));
    Mat got = c.evaluate();
    Mat target = meshc::matrix_from_json(meshc::load_json_file(
        unitary_path.empty() ? iso_path : unitary_path));
    if (target.cols() < got.cols())
      got = got.leftCols(target.cols()).eval();
    const double err = (got - target).norm();
    std::cout << "reconstruction error: " << err << "\n";
    if (err > kTol) {
      report_error("verification", "reconstruction error above tolerance",
                   {{"error_norm", err}});
      return ExitCode::kNumeric;
    }
  }
  return ExitCode::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const meshc::ParseError& e) {
    report_error("parse", e.what());
    return ExitCode::kBadInput;
  } catch (const meshc::DimensionError& e) {
    report_error("dimension", e.what());
    return ExitCode::kBadInput;
  } catch (const meshc::NumericError& e) {
    report_error("numeric", e.what());
    return ExitCode::kNumeric;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return ExitCode::kNumeric;
  }
}
