// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "excoll/characters.hpp"
#include "excoll/collections.hpp"
#include "excoll/error.hpp"
#include "excoll/report.hpp"
#include "oracles.hpp"

using namespace excoll;

namespace {

const std::string kSource = EXCOLL_SOURCE_DIR;
const std::vector<std::string> kGolden = {"q8_d1",         "q8_veronese_d2", "q8_crossed_veronese_d2",
                                          "z3_d1",         "z3_veronese_d3", "z3_crossed_d3"};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure with a short explanation.
class Verdict {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      detail_ = what;
    }
  }
  Outcome done(const std::string& summary) const { return {pass_, pass_ ? summary : detail_}; }

 private:
  bool pass_ = true;
  std::string detail_;
};

EquivariantSetting q8() { return EquivariantSetting::from_builtin(BinaryDihedral{2}); }
EquivariantSetting z3() { return EquivariantSetting::from_builtin(CyclicDiagonal{3, {1, 1, 1}}); }

std::string lbl(long t, std::size_t j) { return EqLineBundle{t, j}.label(); }

using ArrowSet = std::multiset<std::pair<std::string, std::string>>;

ArrowSet arrow_set(const Quiver& q, const std::vector<std::size_t>& nodes) {
  ArrowSet out;
  for (auto i : nodes) {
    for (auto j : nodes) {
      for (long long a = 0; a < q.arrows[i][j]; ++a) out.insert({q.nodes[i], q.nodes[j]});
    }
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome criterion1() {
  Verdict v;
  auto s = q8();
  auto b = beilinson_collection(s);
  v.expect(b.size() == 10, "Beilinson collection does not have 10 objects");
  auto h = b.hom_dims();
  const std::set<std::size_t> outer{0, 1, 3, 4};
  for (std::size_t x = 0; x < 10; ++x) {
    for (std::size_t y = x + 1; y < 10; ++y) {
      long long want = 0;
      if (x < 5 && y >= 5) {
        std::size_t j = x, k = y - 5;
        if ((outer.count(j) && k == 2) || (j == 2 && outer.count(k))) want = 1;
      }
      v.expect(h[x][y] == want, "Hom(" + b.object(x).label + ", " + b.object(y).label + ") = " +
                                    std::to_string(h[x][y]) + ", expected " + std::to_string(want));
      for (const auto& [k, d] : b.ext(x, y)) {
        v.expect(k == 0, "forward Ext^" + std::to_string(k) + " from " + b.object(x).label);
      }
    }
  }
  v.expect(check_strong(b).pass, "Beilinson collection not strong");
  auto q = quiver(b);
  for (std::size_t x = 0; x < 10; ++x) {
    for (std::size_t y = x + 1; y < 10; ++y) {
      v.expect(q.arrows[x][y] == h[x][y], "arrow counts differ from Hom dimensions");
    }
  }
  return v.done("8 single arrows through O(1)@rho_2 / from O(0)@rho_2; strong");
}

Outcome criterion2() {
  Verdict v;
  auto s = q8();
  auto c = dsing_collection(s, DsingMode::InvariantVeronese, 1);
  v.expect(c.size() == 8, "expected 8 objects, got " + std::to_string(c.size()));
  for (const auto& p : c.provenance) {
    if (p.action.rfind("removal", 0) == 0) {
      v.expect(p.detail == "removed " + lbl(0, 0) + ", " + lbl(1, 0), "removed: " + p.detail);
    }
  }
  auto strong = check_strong(c);
  v.expect(strong.pass, strong.message);
  if (!strong.pass) return v.done("");
  const std::string cone = "R_{" + lbl(1, 0) + "}(" + lbl(0, 2) + ")";
  for (const auto& o : c.objects()) {
    if (o.label != cone) continue;
    v.expect(o.complex && o.complex->term(0) == Summands{EqLineBundle{0, 2}} &&
                 o.complex->term(1) == Summands{EqLineBundle{1, 0}} && o.complex->terms().size() == 2,
             "cone is not O(0)@rho_2 -> O(1)@rho_0");
  }
  auto q = quiver(c);
  v.expect(q.components.size() == 2, "expected 2 components, got " + std::to_string(q.components.size()));
  const ArrowSet a{{lbl(0, 1), lbl(1, 2)}, {lbl(0, 3), lbl(1, 2)}, {lbl(0, 4), lbl(1, 2)}};
  const ArrowSet b{{cone, lbl(1, 1)}, {cone, lbl(1, 3)}, {cone, lbl(1, 4)}};
  std::set<ArrowSet> got;
  for (const auto& comp : q.components) got.insert(arrow_set(q, comp));
  v.expect(got == std::set<ArrowSet>{a, b}, "components differ from the two D4 quivers");
  return v.done("8 objects, strong, two D4 components (three sources into O(1)@rho_2; cone into O(1)@rho_{1,3,4})");
}

Outcome criterion3() {
  Verdict v;
  auto s = q8();
  auto b = beilinson_collection(s);
  auto vb = veronese_blocks(b, 2);
  v.expect(vb.e == 2, "e = " + std::to_string(vb.e));
  std::set<std::string> pull;
  for (auto i : vb.blocks[vb.pullback_block]) pull.insert(b.object(i).label);
  v.expect(pull == std::set<std::string>{lbl(0, 0), lbl(0, 1), lbl(0, 3), lbl(0, 4), lbl(1, 2)},
           "pullback block differs");
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (vb.weights[i] != vb.weights[j]) {
        v.expect(b.ext(i, j).empty(), "Ext between " + b.object(i).label + " and " + b.object(j).label);
      }
    }
  }
  auto c = dsing_collection(s, DsingMode::InvariantVeronese, 2);
  v.expect(c.size() == 4, "dsing size " + std::to_string(c.size()));
  auto q = quiver(c);
  std::vector<std::size_t> all{0, 1, 2, 3};
  v.expect(q.components.size() == 1, "D4 quiver not connected");
  v.expect(arrow_set(q, all) == ArrowSet{{lbl(0, 1), lbl(1, 2)}, {lbl(0, 3), lbl(1, 2)}, {lbl(0, 4), lbl(1, 2)}},
           "dsing quiver is not the D4 quiver into O(1)@rho_2");
  return v.done("e = 2, pullback block of five objects, blocks orthogonal, D4 quiver");
}

Outcome criterion4() {
  Verdict v;
  auto s = z3();
  auto b = beilinson_collection(s);
  v.expect(b.size() == 9, "expected 9 objects");
  auto vb = veronese_blocks(b, 3);
  std::set<std::set<std::string>> rows{{lbl(0, 0), lbl(1, 1), lbl(2, 2)},
                                       {lbl(0, 1), lbl(1, 2), lbl(2, 0)},
                                       {lbl(0, 2), lbl(1, 0), lbl(2, 1)}};
  std::set<std::set<std::string>> got;
  for (const auto& blk : vb.blocks) {
    std::set<std::string> labels;
    for (auto i : blk) labels.insert(b.object(i).label);
    got.insert(labels);
  }
  v.expect(vb.e == 3 && got == rows, "blocks differ from the three rows");
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      if (vb.weights[i] != vb.weights[j]) v.expect(b.ext(i, j).empty(), "blocks not orthogonal");
    }
  }
  auto q = quiver(b);
  for (const auto& blk : vb.blocks) {
    v.expect(q.arrows[blk[0]][blk[1]] == 3 && q.arrows[blk[1]][blk[2]] == 3, "adjacent arrows != 3");
    v.expect(q.arrows[blk[0]][blk[2]] == 0, "length-two arrows != 0");
    // composition Hom(E0,E1) x Hom(E1,E2) -> Hom(E0,E2) is onto (rank 6)
    const auto& e0 = *b.object(blk[0]).complex;
    const auto& e1 = *b.object(blk[1]).complex;
    const auto& e2 = *b.object(blk[2]).complex;
    HomComplex h = hom_complex(e0, e2);
    std::vector<Vec> images;
    for (const auto& f : cohomology_basis(e0, e1, 0)) {
      for (const auto& g : cohomology_basis(e1, e2, 0)) images.push_back(flatten(h, compose(f, g)));
    }
    v.expect(images.size() == 9 && rank_of(images, h.dim(0)) == 6 && h.dim(0) == 6,
             "composition 9 -> 6 is not surjective");
  }
  auto inv = dsing_collection(s, DsingMode::InvariantVeronese, 1);
  auto qi = quiver(inv);
  v.expect(qi.components.size() == 3, "invariant d = 1: expected 3 components");
  for (const auto& comp : qi.components) {
    v.expect(comp.size() == 2 && qi.arrows[comp[0]][comp[1]] == 3,
             "invariant d = 1: component is not a 3-arrow Kronecker quiver");
  }
  auto cr = dsing_collection(s, DsingMode::CrossedProduct, 3);
  v.expect(cr.labels() == std::vector<std::string>{lbl(1, 0), lbl(1, 1), lbl(1, 2), lbl(2, 0),
                                                   lbl(2, 1), lbl(2, 2)},
           "crossed d = 3 collection differs");
  v.expect(check_strong(cr).pass, "crossed d = 3 collection not strong");
  v.expect(dsing_collection(s, DsingMode::CrossedProduct, 1).size() == 0, "crossed d = 1 not zero");
  return v.done("3 orthogonal rows, arrows 3/3/0, rank 6; d = 1 gives 3 Kronecker(3); crossed d = 3 strong (6); crossed d = 1 zero");
}

Outcome criterion5() {
  Verdict v;
  auto g = builtin_group(BinaryDihedral{2}).group;
  auto stated = oracle::series({20}, {4, 8, 10}, 24);
  std::vector<long> engine, brute;
  for (int m = 0; m <= 24; ++m) {
    engine.push_back(molien_dimension(g, m));
    brute.push_back(to_integer(oracle::invariant_dimension(g, m), "invariant dimension"));
  }
  v.expect(engine == brute, "engine and brute-force trace average disagree");
  for (int m = 0; m <= 24; ++m) {
    auto i = static_cast<std::size_t>(m);
    v.expect(engine[i] == stated[i],
             "m = " + std::to_string(m) + ": invariant dimension " + std::to_string(engine[i]) +
                 " (engine and brute force agree) but the stated series gives " +
                 std::to_string(stated[i]) +
                 "; the true series is (1-t^12)/((1-t^4)^2(1-t^6)), and degrees 4, 8, 10 with a "
                 "degree-20 relation belong to binary_dihedral(4)");
  }
  return v.done("invariant dimensions match (1-t^20)/((1-t^4)(1-t^8)(1-t^10)) for m <= 24");
}

std::vector<EquivariantSetting> golden_settings() { return {q8(), z3()}; }

ExcCollection golden_dsing(const Scenario& sc, const EquivariantSetting& s) {
  return dsing_collection(s, sc.mode == ScenarioMode::CrossedProduct ? DsingMode::CrossedProduct
                                                                     : DsingMode::InvariantVeronese,
                          sc.veronese_d);
}

Outcome criterion6() {
  Verdict v;
  std::size_t counted = 0;
  // (a) Koszul vanishing
  for (const auto& s : golden_settings()) {
    const long n = s.n();
    for (long m = -2 * n - 2; m <= 2 * n + 2; ++m) {
      CharacterVec total = zero_character(s.group());
      for (long k = 0; k <= n + 1; ++k) {
        CharacterVec coh = zero_character(s.group());
        for (long deg = 0; deg <= n; ++deg) {
          CharacterVec c = ext_character(s, m - k, deg);
          coh = deg % 2 == 0 ? coh + c : coh - c;
        }
        CharacterVec term = s.ext_vdual(k) * coh;
        total = k % 2 == 0 ? total + term : total - term;
      }
      v.expect(total.is_zero(), "(a) Koszul identity fails at m = " + std::to_string(m));
    }
  }
  // (b) Serre duality
  for (const auto& s : golden_settings()) {
    const long n = s.n();
    for (long a = 0; a <= n; ++a) {
      for (long b = 0; b <= n; ++b) {
        for (std::size_t i = 0; i < s.num_irreps(); ++i) {
          for (std::size_t j = 0; j < s.num_irreps(); ++j) {
            EqLineBundle l1{a, i}, l2{b, j};
            EqLineBundle l1w{a - n - 1, s.tensor_with_linear(i, s.det_vdual())};
            for (long k = 0; k <= n; ++k) {
              v.expect(ext_dim_equivariant(s, l1, l2, k) == ext_dim_equivariant(s, l2, l1w, n - k),
                       "(b) Serre duality fails for " + l1.label() + ", " + l2.label());
            }
          }
        }
      }
    }
  }
  // (c) and (f) on every golden run
  for (const auto& name : kGolden) {
    Scenario sc = load_scenario(kSource + "/scenarios/" + name + ".json");
    EquivariantSetting s = build_setting(sc);
    const long n1 = s.n() + 1, r1 = static_cast<long>(s.num_irreps());
    auto b = beilinson_collection(s);
    std::vector<ExcCollection> runs{b, golden_dsing(sc, s)};
    if (sc.veronese_d == 1) runs.push_back(cascade_mutation(b));
    for (const auto& c : runs) {
      v.expect(is_unitriangular(c.gram()), "(c) " + name + ": Gram not unitriangular");
      for (const auto& m : c.mutations) {
        ++counted;
        v.expect(m.base_change_verified, "(c) " + name + ": base change not verified at " + m.result);
      }
    }
    const long a = gorenstein_parameter(s, sc.veronese_d);
    auto vb = veronese_blocks(b, sc.veronese_d);
    v.expect(static_cast<long>(b.size()) == n1 * r1, "(f) " + name + ": Beilinson size");
    for (const auto& blk : vb.blocks) {
      v.expect(static_cast<long>(blk.size()) * vb.e == n1 * r1, "(f) " + name + ": block size");
    }
    const long want = sc.mode == ScenarioMode::CrossedProduct ? n1 * r1 - a * r1 : n1 * r1 / vb.e - a;
    v.expect(static_cast<long>(runs[1].size()) == want, "(f) " + name + ": dsing size");
  }
  // (d) Newton identities against brute-force traces
  for (const auto& s : golden_settings()) {
    const auto& g = s.group();
    for (long m = 0; m <= 5; ++m) {
      auto sym = s.sym_vdual(m);
      auto ext = s.ext_vdual(m);
      for (std::size_t c = 0; c < g.num_classes(); ++c) {
        CycMatrix dual = g.element(g.class_representative(c)).inverse().transpose();
        v.expect(sym.values[c] == oracle::sym_trace(dual, static_cast<int>(m)),
                 "(d) Sym^" + std::to_string(m) + " trace mismatch");
        v.expect(ext.values[c] == oracle::ext_trace(dual, static_cast<std::size_t>(m)),
                 "(d) Lambda^" + std::to_string(m) + " trace mismatch");
      }
    }
  }
  // (e) randomized Hom complexes of shifted line bundles
  std::mt19937 rng(20240611);
  auto settings = golden_settings();
  int pairs = 0;
  while (pairs < 200) {
    const auto& s = settings[static_cast<std::size_t>(pairs % 2)];
    const long n = s.n();
    std::uniform_int_distribution<long> tw(-n - 1, 2 * n + 1), sh(-2, 2);
    std::uniform_int_distribution<std::size_t> ir(0, s.num_irreps() - 1);
    EqLineBundle x{tw(rng), ir(rng)}, y{tw(rng), ir(rng)};
    if (y.twist - x.twist < -n) continue;
    long sx = sh(rng), sy = sh(rng);
    auto got = ext_dims(EqComplex::from_line_bundle(s, x).shift(sx),
                        EqComplex::from_line_bundle(s, y).shift(sy));
    std::map<long, long> want;
    for (long k = 0; k <= n; ++k) {
      long d = ext_dim_equivariant(s, x, y, k);
      if (d) want[k - sy + sx] = d;
    }
    v.expect(got == want, "(e) ext_dims mismatch for " + x.label() + ", " + y.label());
    ++pairs;
  }
  return v.done("(a)-(f) hold; " + std::to_string(counted) + " mutation steps verified, 200 random pairs");
}

Outcome criterion7() {
  Verdict v;
  for (const auto& name : kGolden) {
    Scenario sc = load_scenario(kSource + "/scenarios/" + name + ".json");
    const std::string first = emit_report_json(run_scenario(sc));
    const std::string second = emit_report_json(run_scenario(sc));
    v.expect(first == second, name + ": repeated runs differ");
    v.expect(first == slurp(kSource + "/tests/golden/" + name + ".json"), name + ": differs from fixture");
  }
  return v.done("6 golden reports byte-identical to fixtures on repeated runs");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 Q8 Beilinson quiver", criterion1},
      {"2 Q8 invariant ring d=1: two D4 quivers", criterion2},
      {"3 Q8 Veronese d=2 blocks and D4", criterion3},
      {"4 Z/3 in SL3 blocks and quivers", criterion4},
      {"5 Molien series of binary_dihedral(2)", criterion5},
      {"6 property suites", criterion6},
      {"7 determinism", criterion7},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << " -- " << o.detail << "\n";
  }
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << failures << " of " << criteria.size() << " criteria failed (" << secs << " s)\n";
  return failures == 0 ? 0 : 1;
}
