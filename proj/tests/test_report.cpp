#include <doctest.h>

#include <fstream>
#include <sstream>

#include "excoll/error.hpp"
#include "excoll/report.hpp"

using namespace excoll;

namespace {

const std::string kSource = EXCOLL_SOURCE_DIR;
const std::vector<std::string> kGolden = {"q8_d1",         "q8_veronese_d2", "q8_crossed_veronese_d2",
                                          "z3_d1",         "z3_veronese_d3", "z3_crossed_d3"};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return Errc::InvalidParameter;
}

int count(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("golden reports are byte-identical") {
  for (const auto& name : kGolden) {
    CAPTURE(name);
    Scenario sc = load_scenario(kSource + "/scenarios/" + name + ".json");
    const std::string first = emit_report_json(run_scenario(sc));
    const std::string second = emit_report_json(run_scenario(sc));
    CHECK(first == second);
    CHECK(first == slurp(kSource + "/tests/golden/" + name + ".json"));
  }
}

TEST_CASE("report JSON is a parse fixed point") {
  Scenario sc = load_scenario(kSource + "/scenarios/z3_crossed_d3.json");
  Report r = run_scenario(sc);
  const std::string text = emit_report_json(r);
  Report again;
  again.json = nlohmann::ordered_json::parse(text);
  CHECK(emit_report_json(again) == text);
  for (const auto& row : r.json["tasks"]["gram"]["gram"]) {
    for (const auto& v : row) CHECK(v.is_number_integer());
  }
  CHECK(r.json["tasks"]["dsing"]["size"] == 6);
  CHECK(r.json["tasks"]["dsing"]["strong"]["pass"] == true);
  CHECK(r.all_checks_pass);
}

TEST_CASE("q8_d1 report lists two D4 components") {
  Report r = run_scenario(load_scenario(kSource + "/scenarios/q8_d1.json"));
  const auto& comps = r.json["tasks"]["quiver"]["dsing"]["components"];
  REQUIRE(comps.size() == 2);
  for (const auto& c : comps) CHECK(c.size() == 4);
  const std::string text = emit_report_json(r);
  CHECK(count(text, "freeness assumption") == 1);
}

TEST_CASE("warnings appear once") {
  Report r = run_scenario(load_scenario(kSource + "/scenarios/z3_veronese_d3.json"));
  const std::string text = r.json["warnings"].dump();
  CHECK(count(text, "freeness assumption") == 1);
  CHECK(count(text, "weight convention") == 1);
  CHECK(count(text, "Proj B = P^2") == 1);
  const auto& tw = r.json["tasks"]["twist"];
  CHECK(tw["labels"] == nlohmann::ordered_json::array({"O(2)@rho_0", "O(3)@rho_1", "O(4)@rho_2"}));
}

TEST_CASE("empty task list gives the group summary") {
  Scenario sc = parse_scenario(
      R"({"group": {"kind": "binary_dihedral", "l": 2}, "n_plus_1": 2, "tasks": []})");
  Report r = run_scenario(sc);
  CHECK(r.json["group"]["order"] == 8);
  CHECK(r.json["group"]["irreps"].size() == 5);
  CHECK(r.json["tasks"].empty());
  CHECK(r.all_checks_pass);
}

TEST_CASE("parse errors carry line and column") {
  try {
    (void)parse_scenario("{\n  \"n_plus_1\": 2,\n  \"group\": [1, }\n}");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("validation errors") {
  auto bad = [](const std::string& text) { return code_of([&] { (void)parse_scenario(text); }); };
  const std::string g = R"("group": {"kind": "cyclic_diagonal", "m": 3, "weights": [1, 1, 1]})";
  CHECK(bad("{" + g + R"(, "n_plus_1": 2})") == Errc::ValidationError);
  CHECK(bad("{" + g + R"(, "n_plus_1": 3, "veronese_d": 2, "mode": "crossed_product"})") ==
        Errc::ValidationError);
  CHECK(bad("{" + g + R"(, "n_plus_1": 3, "tasks": ["dsing"]})") == Errc::ValidationError);
  CHECK(bad("{" + g + R"(, "n_plus_1": 3, "tasks": ["frobnicate"]})") == Errc::ValidationError);
  CHECK(bad("{" + g + R"(, "n_plus_1": 3, "colour": 1})") == Errc::ValidationError);
  CHECK(bad("{" + g + R"(, "n_plus_1": 3, "tasks": ["gram", "gram"]})") == Errc::ValidationError);

  Scenario not_sl = parse_scenario(
      R"({"group": {"kind": "cyclic_diagonal", "m": 2, "weights": [1, 0]}, "n_plus_1": 2,
          "mode": "invariant_veronese"})");
  CHECK(code_of([&] { (void)build_setting(not_sl); }) == Errc::ValidationError);
  Report r = run_scenario(not_sl);
  CHECK_FALSE(r.all_checks_pass);
}

TEST_CASE("explicit groups") {
  // Q8 inside SL2 with its five irreducibles given on generators.
  const std::string text = R"({
    "group": {"kind": "explicit", "conductor": 4,
      "generators": [[["z4", "0"], ["0", "-z4"]], [["0", "1"], ["-1", "0"]]],
      "irreps": [
        {"images": [[["1"]], [["1"]]]},
        {"images": [[["1"]], [["-1"]]]},
        {"name": "V", "images": [[["z4", "0"], ["0", "-z4"]], [["0", "1"], ["-1", "0"]]]},
        {"images": [[["-1"]], [["1"]]]},
        {"images": [[["-1"]], [["-1"]]]}
      ]},
    "n_plus_1": 2, "veronese_d": 1, "mode": "invariant_veronese",
    "tasks": ["dsing", "quiver"]})";
  Report r = run_scenario(parse_scenario(text));
  CHECK(r.all_checks_pass);
  CHECK(r.json["tasks"]["dsing"]["size"] == 8);
  CHECK(r.json["tasks"]["quiver"]["dsing"]["components"].size() == 2);

  const std::string broken = R"({
    "group": {"kind": "explicit", "conductor": 4,
      "generators": [[["z4", "0"], ["0", "-z4"]]],
      "irreps": [{"images": [[["1"]]]}, {"images": [[["z4"]]]}]},
    "n_plus_1": 2})";
  Report rb = run_scenario(parse_scenario(broken));
  CHECK_FALSE(rb.all_checks_pass);
  CHECK(rb.json["group"]["error"]["code"] == "IrrepVerificationFailed");

  const std::string outside = R"({
    "group": {"kind": "explicit", "conductor": 4,
      "generators": [[["z8", "0"], ["0", "1"]]], "irreps": [{"images": [[["1"]]]}]},
    "n_plus_1": 2})";
  CHECK(code_of([&] { (void)parse_scenario(outside); }) == Errc::ValidationError);
}

TEST_CASE("partial failures are recorded per task") {
  // twist asks for a block that does not exist
  Scenario sc = parse_scenario(
      R"({"group": {"kind": "cyclic_diagonal", "m": 3, "weights": [1, 1, 1]}, "n_plus_1": 3,
          "veronese_d": 3, "tasks": ["gram", {"twist": {"k": 1, "block": 7}}]})");
  Report r = run_scenario(sc);
  CHECK(r.json["tasks"]["gram"]["status"] == "ok");
  CHECK(r.json["tasks"]["twist"]["status"] == "error");
  CHECK_FALSE(r.all_checks_pass);
}

TEST_CASE("DOT output") {
  Quiver kron{{"a", "b"}, {{0, 3}, {0, 0}}, {{0, 1}}};
  const std::string dot = emit_dot(kron);
  CHECK(count(dot, "n0 -> n1;") == 3);
  CHECK(dot.rfind("digraph quiver {", 0) == 0);

  Quiver empty;
  CHECK(emit_dot(empty) == "digraph quiver {\n}\n");

  Report r = run_scenario(load_scenario(kSource + "/scenarios/q8_veronese_d2.json"));
  REQUIRE(r.quivers.size() == 2);
  const std::string d4 = emit_dot(r.quivers[1].quiver);
  CHECK(count(d4, "label=") == 4);
  CHECK(count(d4, "-> n3;") == 3);
}

TEST_CASE("text tables") {
  const std::string t = emit_table({"x", "yy"}, {{1, 2}, {0, 1}});
  CHECK(t.find(" 0 x ") != std::string::npos);
  CHECK(count(t, "\n") == 3);
}
