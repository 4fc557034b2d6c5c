#include "excoll/report.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "excoll/characters.hpp"
#include "excoll/error.hpp"

namespace excoll {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::ValidationError, what); }

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) invalid(where + " must be an object");
  for (const auto& item : obj.items()) {
    bool known = std::any_of(keys.begin(), keys.end(),
                             [&](const char* k) { return item.key() == k; });
    if (!known) invalid("unknown key '" + item.key() + "' in " + where);
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) invalid(where + " is missing '" + key + "'");
  return *it;
}

long get_long(const json& v, const std::string& what) {
  if (!v.is_number_integer()) invalid(what + " must be an integer");
  return v.get<long>();
}

CycNum parse_entry(const json& v, const std::string& what) {
  if (v.is_number_integer()) return CycNum(v.get<long>());
  if (!v.is_string()) invalid(what + " must be a string literal or an integer");
  try {
    return CycNum::parse(v.get<std::string>());
  } catch (const Error& e) {
    invalid(what + ": " + e.what());
  }
}

CycMatrix parse_matrix(const json& v, std::size_t dim, long conductor, const std::string& what) {
  if (!v.is_array() || v.size() != dim) invalid(what + " must have " + std::to_string(dim) + " rows");
  CycMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!v[r].is_array() || v[r].size() != dim) {
      invalid(what + " row " + std::to_string(r) + " must have " + std::to_string(dim) + " entries");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      CycNum x = parse_entry(v[r][c], what);
      if (conductor % x.conductor() != 0) {
        invalid(what + ": entry " + x.to_string() + " does not lie in Q(z" +
                std::to_string(conductor) + ")");
      }
      m(r, c) = x;
    }
  }
  return m;
}

std::size_t matrix_dim(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) invalid(what + " must be a non-empty matrix");
  return v.size();
}

GroupSpec parse_group(const json& g, long n_plus_1) {
  const std::string kind = [&] {
    const json& k = require(g, "kind", "group");
    if (!k.is_string()) invalid("group.kind must be a string");
    return k.get<std::string>();
  }();
  if (kind == "binary_dihedral") {
    allow_keys(g, "group", {"kind", "l"});
    long l = get_long(require(g, "l", "group"), "group.l");
    if (l < 1) invalid("group.l must be positive");
    if (n_plus_1 != 2) invalid("n_plus_1 must be 2 for binary_dihedral");
    return BinaryDihedral{l};
  }
  if (kind == "cyclic_diagonal") {
    allow_keys(g, "group", {"kind", "m", "weights"});
    long m = get_long(require(g, "m", "group"), "group.m");
    if (m < 1) invalid("group.m must be positive");
    const json& w = require(g, "weights", "group");
    if (!w.is_array()) invalid("group.weights must be an array");
    std::vector<long> weights;
    for (const auto& x : w) weights.push_back(get_long(x, "group.weights entry"));
    if (static_cast<long>(weights.size()) != n_plus_1) {
      invalid("n_plus_1 = " + std::to_string(n_plus_1) + " does not match " +
              std::to_string(weights.size()) + " weights");
    }
    return CyclicDiagonal{m, weights};
  }
  if (kind == "explicit") {
    allow_keys(g, "group", {"kind", "conductor", "generators", "irreps"});
    ExplicitGroupSpec spec;
    spec.conductor = get_long(require(g, "conductor", "group"), "group.conductor");
    if (spec.conductor < 1) invalid("group.conductor must be positive");
    const json& gens = require(g, "generators", "group");
    if (!gens.is_array()) invalid("group.generators must be an array");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string what = "generator " + std::to_string(i);
      std::size_t dim = matrix_dim(gens[i], what);
      if (static_cast<long>(dim) != n_plus_1) {
        invalid(what + " has size " + std::to_string(dim) + " but n_plus_1 = " +
                std::to_string(n_plus_1));
      }
      spec.generators.push_back(parse_matrix(gens[i], dim, spec.conductor, what));
    }
    const json& irr = require(g, "irreps", "group");
    if (!irr.is_array() || irr.empty()) invalid("group.irreps must be a non-empty array");
    for (std::size_t j = 0; j < irr.size(); ++j) {
      const std::string where = "irrep " + std::to_string(j);
      allow_keys(irr[j], where, {"name", "images"});
      ExplicitIrrepSpec rho;
      rho.name = "rho_" + std::to_string(j);
      if (irr[j].contains("name")) {
        if (!irr[j]["name"].is_string()) invalid(where + ".name must be a string");
        rho.name = irr[j]["name"].get<std::string>();
      }
      const json& images = require(irr[j], "images", where);
      if (!images.is_array() || images.size() != spec.generators.size()) {
        invalid(where + " needs one image per generator");
      }
      std::size_t dim = 0;
      for (std::size_t i = 0; i < images.size(); ++i) {
        const std::string what = where + " image " + std::to_string(i);
        std::size_t di = matrix_dim(images[i], what);
        if (i > 0 && di != dim) invalid(where + " images have different sizes");
        dim = di;
        rho.images.push_back(parse_matrix(images[i], di, spec.conductor, what));
      }
      spec.irreps.push_back(std::move(rho));
    }
    return spec;
  }
  invalid("unknown group kind '" + kind + "'");
}

const std::vector<std::pair<std::string, TaskKind>>& task_names() {
  static const std::vector<std::pair<std::string, TaskKind>> names = {
      {"beilinson", TaskKind::Beilinson}, {"check", TaskKind::Check},
      {"gram", TaskKind::Gram},           {"molien", TaskKind::Molien},
      {"cascade", TaskKind::Cascade},     {"blocks", TaskKind::Blocks},
      {"dsing", TaskKind::Dsing},         {"quiver", TaskKind::Quiver},
      {"twist", TaskKind::Twist}};
  return names;
}

TaskKind task_from_name(const std::string& name) {
  for (const auto& [n, k] : task_names()) {
    if (n == name) return k;
  }
  invalid("unknown task '" + name + "'");
}

TaskSpec make_task(TaskKind k) {
  TaskSpec t;
  t.kind = k;
  return t;
}

TaskSpec parse_task(const json& t) {
  if (t.is_string()) {
    TaskSpec spec = make_task(task_from_name(t.get<std::string>()));
    if (spec.kind == TaskKind::Twist) invalid("task twist needs parameters {\"k\": ...}");
    return spec;
  }
  if (!t.is_object() || t.size() != 1) invalid("a task is a name or a one-key object");
  const auto& [name, params] = *t.items().begin();
  TaskSpec spec = make_task(task_from_name(name));
  const std::string where = "task " + name;
  switch (spec.kind) {
    case TaskKind::Molien:
      allow_keys(params, where, {"max_degree"});
      if (params.contains("max_degree")) {
        spec.max_degree = get_long(params["max_degree"], "molien.max_degree");
        if (spec.max_degree < 0) invalid("molien.max_degree must be non-negative");
      }
      break;
    case TaskKind::Twist:
      allow_keys(params, where, {"k", "block"});
      spec.k = get_long(require(params, "k", where), "twist.k");
      if (params.contains("block")) spec.block = get_long(params["block"], "twist.block");
      break;
    default:
      allow_keys(params, where, {});
  }
  return spec;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

ojson matrix_json(const IntMatrix& m) {
  ojson rows = ojson::array();
  for (const auto& row : m) rows.push_back(row);
  return rows;
}

ojson labels_json(const ExcCollection& c, const std::vector<std::size_t>& idx) {
  ojson out = ojson::array();
  for (auto i : idx) out.push_back(c.object(i).label);
  return out;
}

ojson block_json(const Block& b) {
  ojson rows = ojson::array();
  for (const auto& row : b) {
    ojson r = ojson::array();
    for (const auto& entry : row) {
      ojson coords = ojson::array();
      for (const auto& x : entry) coords.push_back(x.to_string());
      r.push_back(coords);
    }
    rows.push_back(r);
  }
  return rows;
}

ojson object_json(const CollectionObject& o) {
  ojson out;
  out["label"] = o.label;
  ojson k = ojson::object();
  for (std::size_t i = 0; i < o.kclass.twists(); ++i) {
    for (std::size_t j = 0; j < o.kclass.irreps(); ++j) {
      if (o.kclass.at(i, j) != 0) {
        k[EqLineBundle{static_cast<long>(i), j}.label()] = o.kclass.at(i, j);
      }
    }
  }
  out["kclass"] = k;
  if (!o.complex) {
    out["complex"] = nullptr;
    return out;
  }
  ojson terms = ojson::array();
  for (const auto& [p, summands] : o.complex->terms()) {
    ojson labels = ojson::array();
    for (const auto& l : summands) labels.push_back(l.label());
    terms.push_back(ojson{{"degree", p}, {"summands", labels}});
  }
  out["complex"] = terms;
  ojson diffs = ojson::array();
  for (const auto& [p, summands] : o.complex->terms()) {
    if (!o.complex->terms().count(p + 1)) continue;
    Block d = o.complex->differential(p);
    if (is_zero_block(d)) continue;
    diffs.push_back(ojson{{"degree", p}, {"blocks", block_json(d)}});
  }
  if (!diffs.empty()) out["differentials"] = diffs;
  return out;
}

ojson provenance_json(const ExcCollection& c) {
  ojson out = ojson::array();
  for (const auto& p : c.provenance) out.push_back(ojson{{"action", p.action}, {"detail", p.detail}});
  return out;
}

ojson mutations_json(const ExcCollection& c) {
  ojson out = ojson::array();
  for (const auto& m : c.mutations) {
    out.push_back(ojson{{"position", m.position},
                        {"moved", m.moved},
                        {"passed", m.passed},
                        {"result", m.result},
                        {"chi", m.chi},
                        {"nontrivial", m.nontrivial},
                        {"k_only", m.k_only},
                        {"base_change_verified", m.base_change_verified}});
  }
  return out;
}

ojson collection_json(const ExcCollection& c) {
  ojson out;
  out["size"] = c.size();
  ojson objs = ojson::array();
  for (const auto& o : c.objects()) objs.push_back(object_json(o));
  out["objects"] = objs;
  if (c.has_complexes()) out["hom_dims"] = matrix_json(c.hom_dims());
  out["gram"] = matrix_json(c.gram());
  out["provenance"] = provenance_json(c);
  if (!c.mutations.empty()) out["mutations"] = mutations_json(c);
  return out;
}

ojson check_json(const CheckReport& r) { return ojson{{"pass", r.pass}, {"message", r.message}}; }

ojson quiver_json(const Quiver& q, bool dot) {
  ojson out;
  out["nodes"] = q.nodes;
  out["arrows"] = matrix_json(q.arrows);
  ojson comps = ojson::array();
  for (const auto& comp : q.components) {
    ojson c = ojson::array();
    for (auto i : comp) c.push_back(q.nodes[i]);
    comps.push_back(c);
  }
  out["components"] = comps;
  if (dot) out["dot"] = emit_dot(q);
  return out;
}

std::string group_description(const Scenario& sc) {
  return std::visit(
      [](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ExplicitGroupSpec>) {
          return "explicit(conductor=" + std::to_string(g.conductor) +
                 ", generators=" + std::to_string(g.generators.size()) + ")";
        } else {
          return builtin_group(BuiltinKind{g}).description;
        }
      },
      sc.group);
}

// Execution state shared by the tasks of one run.
class Runner {
 public:
  Runner(const Scenario& sc, const EquivariantSetting& s) : sc_(sc), s_(s) {}

  ojson run(const TaskSpec& t) {
    switch (t.kind) {
      case TaskKind::Beilinson: return beilinson_task();
      case TaskKind::Check: return check_task();
      case TaskKind::Gram: return gram_task();
      case TaskKind::Molien: return molien_task(t);
      case TaskKind::Cascade: return cascade_task();
      case TaskKind::Blocks: return blocks_task();
      case TaskKind::Dsing: return dsing_task();
      case TaskKind::Quiver: return quiver_task();
      case TaskKind::Twist: return twist_task(t);
    }
    return {};
  }

  void check(const std::string& name, bool pass, const std::string& message) {
    checks_.push_back(ojson{{"name", name}, {"pass", pass}, {"message", message}});
    all_pass_ = all_pass_ && pass;
  }

  void warn(const std::string& key, const std::string& text) {
    if (warned_.insert(key).second) warnings_.push_back(text);
  }

  ojson checks() const { return checks_; }
  ojson warnings() const { return warnings_; }
  bool all_pass() const { return all_pass_; }
  std::vector<NamedQuiver> quivers;

 private:
  const ExcCollection& beil() {
    if (!beil_) beil_ = beilinson_collection(s_);
    return *beil_;
  }

  long expected_beilinson_size() const {
    return sc_.n_plus_1 * static_cast<long>(s_.num_irreps());
  }

  const VeroneseBlocks& blocks() {
    if (!blocks_) {
      blocks_ = veronese_blocks(beil(), sc_.veronese_d);
      if (blocks_->e > 1) {
        warn("weights", "T_d weight convention: w(O(i)@rho_j) = (c_j - i) mod e with rho_j(zeta Id) = "
                        "zeta^c_j; the sign is fixed by requiring the Z/3 (d = 3) pullback block "
                        "to be {O(0)@rho_0, O(1)@rho_1, O(2)@rho_2}");
      }
    }
    return *blocks_;
  }

  const ExcCollection& dsing() {
    if (dsing_error_) std::rethrow_exception(dsing_error_);
    if (!dsing_) {
      try {
        if (sc_.mode == ScenarioMode::InvariantVeronese) blocks();
        dsing_ = dsing_collection(s_,
                                  sc_.mode == ScenarioMode::CrossedProduct
                                      ? DsingMode::CrossedProduct
                                      : DsingMode::InvariantVeronese,
                                  sc_.veronese_d);
      } catch (...) {
        dsing_error_ = std::current_exception();
        throw;
      }
    }
    return *dsing_;
  }

  ojson beilinson_task() {
    const auto& b = beil();
    ojson out = collection_json(b);
    out["fullness"] = "not verified; the K-classes form a basis of the lattice";
    check("beilinson size", static_cast<long>(b.size()) == expected_beilinson_size(),
          std::to_string(b.size()) + " objects");
    return out;
  }

  ojson check_task() {
    const auto& b = beil();
    CheckReport exc = check_exceptional(b);
    CheckReport strong = check_strong(b);
    check("beilinson exceptional", exc.pass, exc.message);
    check("beilinson strong", strong.pass, strong.message);
    return ojson{{"exceptional", check_json(exc)}, {"strong", check_json(strong)}};
  }

  ojson gram_task() {
    const auto& b = beil();
    IntMatrix g = b.gram();
    bool uni = is_unitriangular(g);
    bool match = g == b.gram_from_kclasses();
    BigInt det = kclass_determinant(b);
    check("beilinson gram unitriangular", uni, uni ? "unitriangular" : "not unitriangular");
    check("beilinson gram matches K-classes", match,
          match ? "Ext tables and K-class pairing agree" : "Ext tables and K-class pairing differ");
    check("beilinson K-class determinant", abs(det) == 1, "determinant " + det.get_str());
    return ojson{{"labels", b.labels()},
                 {"gram", matrix_json(g)},
                 {"unitriangular", uni},
                 {"matches_kclass_pairing", match},
                 {"kclass_determinant", det.get_str()}};
  }

  ojson molien_task(const TaskSpec& t) {
    ojson dims = ojson::array();
    for (long m = 0; m <= t.max_degree; ++m) dims.push_back(molien_dimension(s_.group(), m));
    return ojson{{"max_degree", t.max_degree}, {"dimensions", dims}};
  }

  ojson cascade_task() {
    ExcCollection c = cascade_mutation(beil());
    ojson out = collection_json(c);
    CheckReport exc = check_exceptional(c);
    CheckReport strong = check_strong(c);
    out["exceptional"] = check_json(exc);
    out["strong"] = check_json(strong);
    check("cascade exceptional", exc.pass, exc.message);
    bool uni = is_unitriangular(c.gram());
    check("cascade gram unitriangular", uni, uni ? "unitriangular" : "not unitriangular");
    record_base_changes("cascade", c);
    BigInt det = kclass_determinant(c);
    out["kclass_determinant"] = det.get_str();
    check("cascade K-class determinant", abs(det) == 1, "determinant " + det.get_str());
    return out;
  }

  void record_base_changes(const std::string& what, const ExcCollection& c) {
    std::size_t ok = 0, k_only = 0;
    for (const auto& m : c.mutations) {
      ok += m.base_change_verified;
      k_only += m.k_only;
    }
    check(what + " base changes", ok == c.mutations.size(),
          std::to_string(ok) + " of " + std::to_string(c.mutations.size()) +
              " steps verified against recomputed Ext tables");
    if (k_only) {
      warn("k-only", "some mutations fell back to K-classes only; see the provenance log");
    }
  }

  ojson blocks_task() {
    const auto& b = beil();
    const auto& vb = blocks();
    ojson out;
    out["d"] = vb.d;
    out["e"] = vb.e;
    ojson weights = ojson::object();
    for (std::size_t i = 0; i < b.size(); ++i) weights[b.object(i).label] = vb.weights[i];
    out["weights"] = weights;
    ojson blocks = ojson::array();
    for (const auto& blk : vb.blocks) blocks.push_back(labels_json(b, blk));
    out["blocks"] = blocks;
    out["pullback_block"] = vb.pullback_block;
    out["orthogonality"] = "all Ext groups vanish across blocks";
    bool sizes = std::all_of(vb.blocks.begin(), vb.blocks.end(), [&](const auto& blk) {
      return static_cast<long>(blk.size()) * vb.e == expected_beilinson_size();
    });
    check("block sizes", sizes, "|block| * e = (n+1)(r+1)");
    return out;
  }

  ojson dsing_task() {
    const auto& c = dsing();
    ojson out = collection_json(c);
    const long a = gorenstein_parameter(s_, sc_.veronese_d);
    out["gorenstein_parameter"] = a;
    out["is_zero"] = c.size() == 0;
    CheckReport exc = check_exceptional(c);
    CheckReport strong = check_strong(c);
    out["exceptional"] = check_json(exc);
    out["strong"] = check_json(strong);
    check("dsing exceptional", exc.pass, exc.message);
    const long r1 = static_cast<long>(s_.num_irreps());
    long expected = 0;
    std::string formula;
    if (sc_.mode == ScenarioMode::CrossedProduct) {
      expected = (sc_.n_plus_1 - a) * r1;
      formula = "(n+1)(r+1) - a(r+1)";
    } else {
      expected = sc_.n_plus_1 * r1 / blocks().e - a;
      formula = "(n+1)(r+1)/e - a";
      record_base_changes("dsing", c);
      if (sc_.veronese_d == sc_.n_plus_1) {
        long nontrivial = std::count_if(c.mutations.begin(), c.mutations.end(),
                                        [](const MutationRecord& m) { return m.nontrivial; });
        check("dsing without mutations", nontrivial == 0,
              std::to_string(nontrivial) + " nontrivial mutations for d = n+1");
      }
    }
    check("dsing size", static_cast<long>(c.size()) == expected,
          std::to_string(c.size()) + " objects, " + formula + " = " + std::to_string(expected));
    bool uni = is_unitriangular(c.gram());
    check("dsing gram unitriangular", uni, uni ? "unitriangular" : "not unitriangular");
    return out;
  }

  ojson quiver_part(const std::string& name, const std::function<const ExcCollection&()>& get) {
    try {
      Quiver q = quiver(get());
      quivers.push_back({name, q});
      check(name + " quiver", true,
            std::to_string(q.components.size()) + " connected components");
      return quiver_json(q, sc_.include_dot);
    } catch (const Error& e) {
      check(name + " quiver", false, e.what());
      return ojson{{"status", "error"}, {"error", {{"code", std::string(errc_name(e.code()))}, {"message", e.what()}}}};
    }
  }

  ojson quiver_task() {
    ojson out;
    out["beilinson"] = quiver_part("beilinson", [&]() -> const ExcCollection& { return beil(); });
    if (sc_.mode != ScenarioMode::BeilinsonOnly) {
      out["dsing"] = quiver_part("dsing", [&]() -> const ExcCollection& { return dsing(); });
    }
    return out;
  }

  ojson twist_task(const TaskSpec& t) {
    const auto& b = beil();
    const auto& vb = blocks();
    const long w = t.block.value_or(static_cast<long>(vb.pullback_block));
    if (w < 0 || w >= vb.e) {
      throw Error(Errc::InvalidParameter, "block " + std::to_string(w) + " does not exist (e = " +
                                              std::to_string(vb.e) + ")");
    }
    const auto& idx = vb.blocks[static_cast<std::size_t>(w)];
    ExcCollection base = b.subcollection(idx, "");
    ExcCollection tw = tensor_twist(b, t.k, idx);
    CentralSubgroupInfo info = central_scalar_subgroup(s_.group(), sc_.veronese_d);
    ojson weights = ojson::array();
    for (const auto& o : tw.objects()) {
      if (o.complex && o.complex->is_line_bundle()) {
        weights.push_back(line_bundle_weight(s_, info, o.complex->term(0).front()));
      } else {
        weights.push_back(nullptr);
      }
    }
    bool same = tw.gram() == base.gram() && tw.hom_dims() == base.hom_dims() &&
                tw.gram_from_kclasses() == base.gram();
    check("twist invariance", same, same ? "Ext tables unchanged by the twist"
                                         : "Ext tables changed by the twist");
    return ojson{{"k", t.k},
                 {"block", w},
                 {"source", labels_json(b, idx)},
                 {"labels", tw.labels()},
                 {"weights", weights},
                 {"ext_tables_invariant", same}};
  }

  const Scenario& sc_;
  const EquivariantSetting& s_;
  std::optional<ExcCollection> beil_;
  std::optional<VeroneseBlocks> blocks_;
  std::optional<ExcCollection> dsing_;
  std::exception_ptr dsing_error_;
  ojson checks_ = ojson::array();
  ojson warnings_ = ojson::array();
  std::set<std::string> warned_;
  bool all_pass_ = true;
};

}  // namespace

std::string_view mode_name(ScenarioMode mode) {
  switch (mode) {
    case ScenarioMode::CrossedProduct: return "crossed_product";
    case ScenarioMode::InvariantVeronese: return "invariant_veronese";
    case ScenarioMode::BeilinsonOnly: return "beilinson_only";
  }
  return "?";
}

std::string_view task_name(TaskKind kind) {
  for (const auto& [n, k] : task_names()) {
    if (k == kind) return n;
  }
  return "?";
}

Scenario parse_scenario(const std::string& text, const std::string& default_name) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ", column " +
                                      std::to_string(col) + ": " + e.what());
  }
  allow_keys(root, "scenario", {"name", "group", "n_plus_1", "veronese_d", "mode", "tasks", "output"});
  Scenario sc;
  sc.name = default_name;
  if (root.contains("name")) {
    if (!root["name"].is_string()) invalid("name must be a string");
    sc.name = root["name"].get<std::string>();
  }
  sc.n_plus_1 = get_long(require(root, "n_plus_1", "scenario"), "n_plus_1");
  if (sc.n_plus_1 < 1) invalid("n_plus_1 must be positive");
  sc.group = parse_group(require(root, "group", "scenario"), sc.n_plus_1);
  if (root.contains("veronese_d")) sc.veronese_d = get_long(root["veronese_d"], "veronese_d");
  if (sc.veronese_d < 1) invalid("veronese_d must be positive");

  const std::string mode = root.value("mode", std::string("beilinson_only"));
  if (mode == "crossed_product") {
    sc.mode = ScenarioMode::CrossedProduct;
  } else if (mode == "invariant_veronese") {
    sc.mode = ScenarioMode::InvariantVeronese;
  } else if (mode == "beilinson_only") {
    sc.mode = ScenarioMode::BeilinsonOnly;
  } else {
    invalid("unknown mode '" + mode + "'");
  }

  if (root.contains("tasks")) {
    const json& tasks = root["tasks"];
    if (tasks.is_string() && tasks.get<std::string>() == "all") {
      for (const auto& [n, k] : task_names()) {
        if (k == TaskKind::Twist) continue;
        if (k == TaskKind::Dsing && sc.mode == ScenarioMode::BeilinsonOnly) continue;
        sc.tasks.push_back(make_task(k));
      }
    } else {
      if (!tasks.is_array()) invalid("tasks must be an array or \"all\"");
      for (const auto& t : tasks) sc.tasks.push_back(parse_task(t));
    }
  }
  std::sort(sc.tasks.begin(), sc.tasks.end(),
            [](const TaskSpec& a, const TaskSpec& b) { return a.kind < b.kind; });
  for (std::size_t i = 1; i < sc.tasks.size(); ++i) {
    if (sc.tasks[i].kind == sc.tasks[i - 1].kind) {
      invalid("task " + std::string(task_name(sc.tasks[i].kind)) + " listed twice");
    }
  }

  bool veronese_task = false;
  for (const auto& t : sc.tasks) {
    if (t.kind == TaskKind::Dsing && sc.mode == ScenarioMode::BeilinsonOnly) {
      invalid("task dsing needs mode crossed_product or invariant_veronese");
    }
    if (t.kind == TaskKind::Blocks || t.kind == TaskKind::Dsing || t.kind == TaskKind::Twist) {
      veronese_task = true;
    }
  }
  if ((veronese_task || sc.mode != ScenarioMode::BeilinsonOnly) && sc.n_plus_1 % sc.veronese_d != 0) {
    invalid("veronese_d = " + std::to_string(sc.veronese_d) + " does not divide n_plus_1 = " +
            std::to_string(sc.n_plus_1));
  }

  if (root.contains("output")) {
    allow_keys(root["output"], "output", {"dot"});
    if (root["output"].contains("dot")) {
      if (!root["output"]["dot"].is_boolean()) invalid("output.dot must be a boolean");
      sc.include_dot = root["output"]["dot"].get<bool>();
    }
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ValidationError, "cannot read scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_scenario(buf.str(), stem);
}

EquivariantSetting build_setting(const Scenario& sc) {
  EquivariantSetting s = std::visit(
      [&](const auto& g) -> EquivariantSetting {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ExplicitGroupSpec>) {
          FiniteMatrixGroup group =
              generate_group(g.generators, static_cast<std::size_t>(sc.n_plus_1));
          std::vector<Irrep> irreps;
          for (std::size_t j = 0; j < g.irreps.size(); ++j) {
            Irrep rho;
            rho.index = j;
            rho.dim = g.irreps[j].images.front().rows();
            rho.name = g.irreps[j].name;
            rho.matrices = extend_to_elements(group, g.irreps[j].images);
            irreps.push_back(std::move(rho));
          }
          return EquivariantSetting(std::move(group), std::move(irreps));
        } else {
          return EquivariantSetting::from_builtin(BuiltinKind{g});
        }
      },
      sc.group);
  if (sc.mode == ScenarioMode::InvariantVeronese && !s.in_special_linear()) {
    throw Error(Errc::ValidationError, "mode invariant_veronese requires G inside SL (det character trivial)");
  }
  return s;
}

Report run_scenario(const Scenario& sc) {
  Report rep;
  ojson& j = rep.json;
  j["scenario"] = sc.name;
  j["settings"] = ojson{{"mode", std::string(mode_name(sc.mode))},
                        {"n_plus_1", sc.n_plus_1},
                        {"veronese_d", sc.veronese_d}};
  std::optional<EquivariantSetting> setting;
  ojson group;
  group["description"] = group_description(sc);
  try {
    setting = build_setting(sc);
  } catch (const Error& e) {
    group["status"] = "error";
    group["error"] = ojson{{"code", std::string(errc_name(e.code()))}, {"message", e.what()}};
    j["group"] = group;
    j["checks"] = ojson::array({ojson{{"name", "group"}, {"pass", false}, {"message", e.what()}}});
    j["warnings"] = ojson::array();
    j["all_checks_pass"] = false;
    rep.all_checks_pass = false;
    return rep;
  }
  const auto& s = *setting;
  group["order"] = s.group().order();
  group["dimension"] = s.group().dimension();
  group["n"] = s.n();
  group["conductor"] = s.group().conductor();
  group["conjugacy_classes"] = s.group().num_classes();
  ojson irreps = ojson::array();
  for (const auto& rho : s.irreps()) irreps.push_back(ojson{{"name", rho.name}, {"dim", rho.dim}});
  group["irreps"] = irreps;
  group["in_special_linear"] = s.in_special_linear();
  j["group"] = group;

  Runner runner(sc, s);
  runner.check("irreps verified", true, std::to_string(s.num_irreps()) + " irreducibles");
  if (sc.mode == ScenarioMode::InvariantVeronese) {
    runner.warn("freeness", "freeness assumption: G is assumed to act freely on V minus the origin; "
                            "this is not checked");
    CentralSubgroupInfo info = central_scalar_subgroup(s.group(), sc.veronese_d);
    if (sc.n_plus_1 == 3 && sc.veronese_d == 3 && info.e == static_cast<long>(s.group().order())) {
      runner.warn("proj", "G acts by scalars here, so Proj B = P^2 (n = 2); a value of P^3 for "
                          "this Veronese would contradict Gorenstein parameter one and the "
                          "three-arrow Kronecker quiver, and is treated as a typo");
    }
  }
  if (sc.mode != ScenarioMode::BeilinsonOnly) {
    j["settings"]["gorenstein_parameter"] = gorenstein_parameter(s, sc.veronese_d);
  }

  ojson tasks = ojson::object();
  for (const auto& t : sc.tasks) {
    const std::string name(task_name(t.kind));
    try {
      ojson section = runner.run(t);
      ojson wrapped{{"status", "ok"}};
      for (auto it = section.begin(); it != section.end(); ++it) wrapped[it.key()] = it.value();
      tasks[name] = wrapped;
    } catch (const Error& e) {
      tasks[name] = ojson{{"status", "error"},
                          {"error", {{"code", std::string(errc_name(e.code()))}, {"message", e.what()}}}};
      runner.check("task " + name, false, e.what());
    }
  }
  j["tasks"] = tasks;
  j["checks"] = runner.checks();
  j["warnings"] = runner.warnings();
  j["all_checks_pass"] = runner.all_pass();
  rep.all_checks_pass = runner.all_pass();
  rep.quivers = std::move(runner.quivers);
  return rep;
}

std::string emit_dot(const Quiver& q, const std::string& graph_name) {
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n";
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    out << "  n" << i << " [label=" << json(q.nodes[i]).dump() << "];\n";
  }
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
      for (long long a = 0; a < q.arrows[i][k]; ++a) out << "  n" << i << " -> n" << k << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string emit_report_json(const Report& r) { return r.json.dump(2) + "\n"; }

std::string emit_table(const std::vector<std::string>& labels, const IntMatrix& m) {
  std::size_t lw = 0;
  for (const auto& l : labels) lw = std::max(lw, l.size());
  std::size_t cw = 1;
  for (const auto& row : m) {
    for (auto v : row) cw = std::max(cw, std::to_string(v).size());
  }
  cw = std::max(cw, std::to_string(labels.size()).size());
  auto pad = [](const std::string& s, std::size_t w) { return std::string(w - std::min(w, s.size()), ' ') + s; };
  std::ostringstream out;
  out << std::string(lw + 4, ' ');
  for (std::size_t j = 0; j < labels.size(); ++j) out << ' ' << pad(std::to_string(j), cw);
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << pad(std::to_string(i), 2) << ' ' << labels[i] << std::string(lw - labels[i].size() + 1, ' ');
    for (auto v : m[i]) out << ' ' << pad(std::to_string(v), cw);
    out << '\n';
  }
  return out.str();
}

}  // namespace excoll
