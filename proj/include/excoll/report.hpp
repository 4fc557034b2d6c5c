#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "excoll/collections.hpp"

namespace excoll {

struct ExplicitIrrepSpec {
  std::string name;
  std::vector<CycMatrix> images;  // one per generator
};

struct ExplicitGroupSpec {
  long conductor = 1;
  std::vector<CycMatrix> generators;
  std::vector<ExplicitIrrepSpec> irreps;
};

using GroupSpec = std::variant<CyclicDiagonal, BinaryDihedral, ExplicitGroupSpec>;

enum class ScenarioMode { CrossedProduct, InvariantVeronese, BeilinsonOnly };

enum class TaskKind { Beilinson, Check, Gram, Molien, Cascade, Blocks, Dsing, Quiver, Twist };

struct TaskSpec {
  TaskKind kind = TaskKind::Beilinson;
  long max_degree = 24;            // molien
  long k = 0;                      // twist
  std::optional<long> block;       // twist: weight of the block, default pullback
};

struct Scenario {
  std::string name;
  GroupSpec group;
  long n_plus_1 = 0;
  long veronese_d = 1;
  ScenarioMode mode = ScenarioMode::BeilinsonOnly;
  std::vector<TaskSpec> tasks;  // sorted in execution order
  bool include_dot = true;
};

/// Parses and validates scenario JSON. Throws Errc::ParseError (with line and
/// column) or Errc::ValidationError.
Scenario parse_scenario(const std::string& text, const std::string& default_name = "scenario");
Scenario load_scenario(const std::string& path);

std::string_view mode_name(ScenarioMode mode);
std::string_view task_name(TaskKind kind);

/// Builds the group and verifies the irreps (Errc::IrrepVerificationFailed).
EquivariantSetting build_setting(const Scenario& sc);

struct NamedQuiver {
  std::string name;
  Quiver quiver;
};

struct Report {
  nlohmann::ordered_json json;
  std::vector<NamedQuiver> quivers;
  bool all_checks_pass = true;
};

/// Runs the scenario tasks in dependency order. Task failures are recorded in
/// the report and the run continues; only scenario validation errors throw.
Report run_scenario(const Scenario& sc);

std::string emit_dot(const Quiver& q, const std::string& graph_name = "quiver");
std::string emit_report_json(const Report& r);
/// Fixed-width text table with row and column labels.
std::string emit_table(const std::vector<std::string>& labels, const IntMatrix& m);

}  // namespace excoll
