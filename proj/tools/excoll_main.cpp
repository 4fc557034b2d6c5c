#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "excoll/characters.hpp"
#include "excoll/error.hpp"
#include "excoll/report.hpp"

using namespace excoll;

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ValidationError, "cannot write " + path.string());
  out << text;
}

void write_dots(const std::string& dir, const std::string& stem, const std::vector<NamedQuiver>& qs) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  for (const auto& q : qs) {
    write_file(std::filesystem::path(dir) / (stem + "_" + q.name + ".dot"), emit_dot(q.quiver));
  }
}

std::optional<ExcCollection> dsing_of(const Scenario& sc, const EquivariantSetting& s) {
  if (sc.mode == ScenarioMode::BeilinsonOnly) return std::nullopt;
  return dsing_collection(s, sc.mode == ScenarioMode::CrossedProduct ? DsingMode::CrossedProduct
                                                                     : DsingMode::InvariantVeronese,
                          sc.veronese_d);
}

int cmd_run(const std::string& path, const std::string& out, const std::string& dot) {
  Scenario sc = load_scenario(path);
  Report rep = run_scenario(sc);
  const std::string text = emit_report_json(rep);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
  write_dots(dot, sc.name, rep.quivers);
  for (const auto& c : rep.json["checks"]) {
    if (!c["pass"].get<bool>()) {
      std::cerr << "FAIL " << c["name"].get<std::string>() << ": " << c["message"].get<std::string>()
                << "\n";
    }
  }
  return rep.all_checks_pass ? 0 : 1;
}

int cmd_molien(const std::string& path, long max_degree) {
  Scenario sc = load_scenario(path);
  EquivariantSetting s = build_setting(sc);
  std::cout << "m  dim (Sym^m V^vee)^G\n";
  for (long m = 0; m <= max_degree; ++m) {
    std::cout << m << "  " << molien_dimension(s.group(), m) << "\n";
  }
  return 0;
}

int cmd_quiver(const std::string& path, const std::string& dot) {
  Scenario sc = load_scenario(path);
  EquivariantSetting s = build_setting(sc);
  std::vector<std::pair<std::string, ExcCollection>> colls;
  colls.emplace_back("beilinson", beilinson_collection(s));
  if (auto d = dsing_of(sc, s)) colls.emplace_back("dsing", std::move(*d));
  std::vector<NamedQuiver> qs;
  bool ok = true;
  for (const auto& [name, c] : colls) {
    std::cout << "[" << name << "]\n";
    try {
      Quiver q = quiver(c);
      std::cout << emit_table(q.nodes, q.arrows);
      std::cout << q.components.size() << " connected components\n";
      qs.push_back({name, q});
    } catch (const Error& e) {
      std::cout << e.what() << "\n";
      ok = false;
    }
  }
  write_dots(dot, sc.name, qs);
  return ok ? 0 : 1;
}

int cmd_gram(const std::string& path) {
  Scenario sc = load_scenario(path);
  EquivariantSetting s = build_setting(sc);
  std::vector<std::pair<std::string, ExcCollection>> colls;
  colls.emplace_back("beilinson", beilinson_collection(s));
  if (auto d = dsing_of(sc, s)) colls.emplace_back("dsing", std::move(*d));
  bool ok = true;
  for (const auto& [name, c] : colls) {
    IntMatrix g = c.gram();
    bool uni = is_unitriangular(g);
    ok = ok && uni;
    std::cout << "[" << name << "] " << (uni ? "unitriangular" : "NOT unitriangular") << "\n";
    std::cout << emit_table(c.labels(), g);
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant exceptional collections, mutations and quivers"};
  app.require_subcommand(1);

  std::string scenario, out, dot;
  long max_degree = 24;

  auto* run = app.add_subcommand("run", "run a scenario and emit the JSON report");
  run->add_option("scenario", scenario, "scenario JSON file")->required();
  run->add_option("--out", out, "write the report here instead of stdout");
  run->add_option("--dot", dot, "directory for DOT quivers");

  auto* molien = app.add_subcommand("molien", "dimensions of invariant polynomials");
  molien->add_option("scenario", scenario, "scenario JSON file")->required();
  molien->add_option("--max-degree", max_degree, "largest degree")->check(CLI::NonNegativeNumber);

  auto* quiv = app.add_subcommand("quiver", "arrow counts of the Beilinson and dsing collections");
  quiv->add_option("scenario", scenario, "scenario JSON file")->required();
  quiv->add_option("--dot", dot, "directory for DOT quivers");

  auto* gram = app.add_subcommand("gram", "Euler form Gram matrices");
  gram->add_option("scenario", scenario, "scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario, out, dot);
    if (molien->parsed()) return cmd_molien(scenario, max_degree);
    if (quiv->parsed()) return cmd_quiver(scenario, dot);
    if (gram->parsed()) return cmd_gram(scenario);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
