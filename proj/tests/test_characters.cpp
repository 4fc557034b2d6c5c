#include <doctest.h>

#include "excoll/characters.hpp"
#include "excoll/error.hpp"
#include "excoll/matrix_group.hpp"
#include "oracles.hpp"

using namespace excoll;

namespace {

std::vector<GroupWithIrreps> sample_groups() {
  std::vector<GroupWithIrreps> out;
  out.push_back(builtin_group(BinaryDihedral{2}));
  out.push_back(builtin_group(BinaryDihedral{3}));
  out.push_back(builtin_group(CyclicDiagonal{3, {1, 1, 1}}));
  out.push_back(builtin_group(CyclicDiagonal{4, {1, 3}}));
  out.push_back(builtin_group(CyclicDiagonal{5, {1, 2, 2}}));
  return out;
}

}  // namespace

TEST_CASE("inner products of basic characters") {
  auto q8 = builtin_group(BinaryDihedral{2});
  const auto& g = q8.group;
  CHECK(character_inner_product(g, trivial_character(g), trivial_character(g)) == 1);
  for (const auto& rho : q8.irreps) {
    CHECK(character_inner_product(g, regular_character(g), character_of(g, rho.matrices)) ==
          static_cast<long>(rho.dim));
  }
  auto chi2 = character_of(g, q8.irreps[2].matrices);
  CHECK(character_inner_product(g, chi2, chi2) == 1);

  auto z3 = builtin_group(CyclicDiagonal{3, {1, 1, 1}}).group;
  CHECK_THROWS_AS(character_inner_product(g, trivial_character(g), trivial_character(z3)), Error);
}

TEST_CASE("verify_irreps") {
  auto q8 = builtin_group(BinaryDihedral{2});
  auto report = verify_irreps(q8.group, q8.irreps);
  CHECK(report.pass);

  auto dup = q8.irreps;
  dup[3] = dup[1];
  auto bad = verify_irreps(q8.group, dup);
  CHECK_FALSE(bad.pass);
  CHECK(bad.message.find("inner product") != std::string::npos);

  auto triv = builtin_group(CyclicDiagonal{1, {1}});
  CHECK(verify_irreps(triv.group, triv.irreps).pass);

  auto not_hom = q8.irreps;
  not_hom[2].matrices[3] = CycMatrix::identity(2);
  CHECK_FALSE(verify_irreps(q8.group, not_hom).pass);

  auto missing = q8.irreps;
  missing.pop_back();
  CHECK_FALSE(verify_irreps(q8.group, missing).pass);
}

TEST_CASE("symmetric power characters of the binary dihedral group") {
  auto q8 = builtin_group(BinaryDihedral{2});
  const auto& g = q8.group;
  auto chi = defining_character(g);
  CHECK(sym_power_character(g, chi, 0) == trivial_character(g));
  CHECK(sym_power_character(g, chi, 1) == chi);
  auto s2 = sym_power_character(g, chi, 2);
  CHECK(s2.degree() == CycNum(3));
  CHECK(character_inner_product(g, s2, trivial_character(g)) == 0);
  // Order 8: (x1 x2)^2 and x1^4 + x2^4 are both invariant in degree 4.
  auto s4 = sym_power_character(g, chi, 4);
  CHECK(character_inner_product(g, s4, trivial_character(g)) == 2);

  auto bd16 = builtin_group(BinaryDihedral{4}).group;
  auto s4_16 = sym_power_character(bd16, defining_character(bd16), 4);
  CHECK(character_inner_product(bd16, s4_16, trivial_character(bd16)) == 1);
}

TEST_CASE("exterior power characters") {
  auto q8 = builtin_group(BinaryDihedral{2});
  auto chi = defining_character(q8.group);
  CHECK(ext_power_character(q8.group, chi, 0) == trivial_character(q8.group));
  CHECK(ext_power_character(q8.group, chi, 2) == trivial_character(q8.group));
  CHECK(ext_power_character(q8.group, chi, 3).is_zero());

  auto z3 = builtin_group(CyclicDiagonal{3, {1, 1, 1}});
  auto l3 = ext_power_character(z3.group, defining_character(z3.group), 3);
  CHECK(l3 == character_of(z3.group, z3.irreps[0].matrices));
}

TEST_CASE("Newton identities agree with brute-force traces") {
  for (const auto& gw : sample_groups()) {
    const auto& g = gw.group;
    auto chi = defining_character(g);
    for (int m = 0; m <= 5; ++m) {
      auto sym = sym_power_character(g, chi, m);
      auto ext = ext_power_character(g, chi, m);
      for (std::size_t c = 0; c < g.num_classes(); ++c) {
        const auto& el = g.element(g.class_representative(c));
        CHECK(sym.values[c] == oracle::sym_trace(el, m));
        CHECK(ext.values[c] == oracle::ext_trace(el, static_cast<std::size_t>(m)));
      }
    }
  }
}

TEST_CASE("Molien dimensions") {
  auto q8 = builtin_group(BinaryDihedral{2}).group;
  auto q8_series = oracle::series({12}, {4, 4, 6}, 24);
  for (int m = 0; m <= 24; ++m) {
    CHECK(molien_dimension(q8, m) == q8_series[static_cast<std::size_t>(m)]);
    CHECK(oracle::invariant_dimension(q8, m) == q8_series[static_cast<std::size_t>(m)]);
  }
  // Generators of degrees 4, 8, 10 with a relation in degree 20 belong to the
  // binary dihedral group of order 16, not to the group of order 8.
  auto degrees_4_8_10 = oracle::series({20}, {4, 8, 10}, 24);
  CHECK(molien_dimension(q8, 4) != degrees_4_8_10[4]);
  auto bd16 = builtin_group(BinaryDihedral{4}).group;
  for (int m = 0; m <= 24; ++m) {
    CHECK(molien_dimension(bd16, m) == degrees_4_8_10[static_cast<std::size_t>(m)]);
  }
  auto z3 = builtin_group(CyclicDiagonal{3, {1, 1, 1}}).group;
  CHECK(molien_dimension(z3, 0) == 1);
  CHECK(molien_dimension(z3, 1) == 0);
  CHECK(molien_dimension(z3, 3) == 10);
  CHECK(molien_dimension(z3, -1) == 0);
}
