#include <doctest.h>

#include <random>

#include "excoll/complex.hpp"
#include "excoll/error.hpp"

using namespace excoll;

namespace {

EquivariantSetting q8() { return EquivariantSetting::from_builtin(BinaryDihedral{2}); }
EquivariantSetting z3() { return EquivariantSetting::from_builtin(CyclicDiagonal{3, {1, 1, 1}}); }
EquivariantSetting trivial(std::size_t dim) {
  return EquivariantSetting::from_builtin(CyclicDiagonal{1, std::vector<long>(dim, 1)});
}

EqComplex lb(const EquivariantSetting& s, long twist, std::size_t irrep) {
  return EqComplex::from_line_bundle(s, EqLineBundle{twist, irrep});
}

std::map<long, long> expected_ext(const EquivariantSetting& s, const EqLineBundle& a,
                                  const EqLineBundle& b) {
  std::map<long, long> out;
  for (long k = 0; k <= s.n(); ++k) {
    long v = ext_dim_equivariant(s, a, b, k);
    if (v) out[k] = v;
  }
  return out;
}

}  // namespace

TEST_CASE("line bundle complexes") {
  auto s = q8();
  auto c = lb(s, 0, 0);
  CHECK(c.is_line_bundle());
  CHECK(c.min_degree() == 0);
  CHECK(c.max_degree() == 0);
  CHECK(ext_dims(c, c) == std::map<long, long>{{0, 1}});
  auto c1 = c.shift(1);
  CHECK(c1.min_degree() == -1);
  CHECK(ext_dims(c1, lb(s, 1, 2)) == std::map<long, long>{{1, 1}});
  CHECK(ext_dims(lb(s, 0, 0), lb(s, 1, 2).shift(1)) == std::map<long, long>{{-1, 1}});
  CHECK(c.kclass() == KClass::unit(s, 0, 0));
  CHECK(c1.kclass() == -KClass::unit(s, 0, 0));
}

TEST_CASE("Hom complex of line bundles matches closed-form Ext") {
  for (const auto& s : {q8(), z3()}) {
    const long n = s.n();
    for (long a = 0; a <= n; ++a) {
      for (long b = 0; b <= n; ++b) {
        for (std::size_t i = 0; i < s.num_irreps(); ++i) {
          for (std::size_t j = 0; j < s.num_irreps(); ++j) {
            CHECK(ext_dims(lb(s, a, i), lb(s, b, j)) == expected_ext(s, {a, i}, {b, j}));
          }
        }
      }
    }
  }
  auto p2 = trivial(3);
  CHECK(ext_dims(lb(p2, 0, 0), lb(p2, 2, 0)) == std::map<long, long>{{0, 6}});
}

TEST_CASE("window violations") {
  auto s = trivial(2);
  CHECK_THROWS_AS(hom_complex(lb(s, 3, 0), lb(s, 0, 0)), Error);
  try {
    (void)ext_dims(lb(s, 2, 0), lb(s, 0, 0));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::WindowViolation);
  }
  CHECK_THROWS_AS(EqComplex(s, {{0, {EqLineBundle{0, 0}, EqLineBundle{2, 0}}}}, {}), Error);
}

TEST_CASE("invalid complexes are rejected") {
  auto s = trivial(2);
  // O -> O(1) -> O(1) with a nonzero composite
  Block d0{{Vec{1, 0}}};
  CHECK_THROWS_AS(EqComplex(s, {{0, {EqLineBundle{0, 0}}}, {1, {EqLineBundle{1, 0}}},
                                {2, {EqLineBundle{1, 0}}}},
                            {{0, d0}, {1, Block{{Vec{1}}}}}),
                  Error);
  CHECK_THROWS_AS(EqComplex(s, {{0, {EqLineBundle{0, 0}}}, {1, {EqLineBundle{1, 0}}}},
                            {{0, Block{{Vec{1}}}}}),
                  Error);
}

TEST_CASE("the D4 cone") {
  auto s = q8();
  auto e = lb(s, 0, 2);
  auto f = lb(s, 1, 0);
  auto basis = cohomology_basis(e, f, 0);
  REQUIRE(basis.size() == 1);
  CHECK(is_chain_map(basis[0]));

  auto cone = right_mutation(e, f);
  REQUIRE(cone.terms().size() == 2);
  CHECK(cone.term(0) == Summands{EqLineBundle{0, 2}});
  CHECK(cone.term(1) == Summands{EqLineBundle{1, 0}});
  CHECK_FALSE(is_zero_block(cone.differential(0)));

  CHECK(ext_dims(cone, lb(s, 1, 1)) == std::map<long, long>{{0, 1}});
  CHECK(ext_dims(cone, lb(s, 1, 2)).empty());
  CHECK(ext_dims(cone, cone) == std::map<long, long>{{0, 1}});
  CHECK(ext_dims(cone, f).empty());
  CHECK(cone.kclass() == KClass::unit(s, 0, 2) - KClass::unit(s, 1, 0));
}

TEST_CASE("identity and orthogonal pairs") {
  auto s = q8();
  auto l = lb(s, 0, 3);
  auto basis = cohomology_basis(l, l, 0);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0].components.at(0) == identity_map(l).components.at(0));

  auto e = lb(s, 0, 1);
  auto f = lb(s, 1, 0);
  CHECK(ext_dims(e, f).empty());
  CHECK(right_mutation(e, f) == e);
  CHECK(left_mutation(e, f) == f);
}

TEST_CASE("mutation K-classes on random exceptional pairs") {
  std::mt19937 rng(2024);
  for (const auto& s : {q8(), z3()}) {
    std::uniform_int_distribution<long> tw(0, s.n());
    std::uniform_int_distribution<std::size_t> ir(0, s.num_irreps() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      EqLineBundle a{tw(rng), ir(rng)}, b{tw(rng), ir(rng)};
      if (b.twist < a.twist || a == b) std::swap(a, b);
      if (a == b) continue;
      auto e = lb(s, a.twist, a.irrep);
      auto f = lb(s, b.twist, b.irrep);
      long chi = euler_pairing(s, a, b);
      auto r = right_mutation(e, f);
      CHECK(r.kclass() == e.kclass() - chi * f.kclass());
      CHECK(ext_dims(r, r) == std::map<long, long>{{0, 1}});
      CHECK(ext_dims(r, f).empty());
      CHECK(euler_from_ext(ext_dims(r, f)) == euler_pairing(s, r.kclass(), f.kclass()));
      CHECK(euler_from_ext(ext_dims(f, r)) == euler_pairing(s, f.kclass(), r.kclass()));
      auto l = left_mutation(e, f);
      CHECK(l.kclass() == f.kclass() - chi * e.kclass());
      CHECK(ext_dims(l, l) == std::map<long, long>{{0, 1}});
      CHECK(ext_dims(e, l).empty());
    }
  }
}

TEST_CASE("left mutation on P^1 and the round trip") {
  auto s = trivial(2);
  auto e = lb(s, 0, 0);
  auto f = lb(s, 1, 0);
  auto l = left_mutation(e, f);
  CHECK(l.kclass() == KClass::unit(s, 1, 0) - 2 * KClass::unit(s, 0, 0));
  CHECK(l.kclass() == -koszul_reduce(s, -1, std::size_t{0}));
  CHECK(l.term(-1).size() == 2);
  CHECK(l.term(0) == Summands{EqLineBundle{1, 0}});

  auto back = right_mutation(l, e);
  for (long t = 0; t <= 1; ++t) {
    auto x = lb(s, t, 0);
    CHECK(ext_dims(back, x) == ext_dims(f, x));
    CHECK(ext_dims(x, back) == ext_dims(x, f));
  }
  CHECK(back.kclass() == f.kclass());

  for (const auto& g : {q8(), z3()}) {
    auto a = lb(g, 0, 0);
    auto b = lb(g, 1, g.num_irreps() == 5 ? 2 : 1);
    auto lm = left_mutation(a, b);
    auto rt = right_mutation(lm, a);
    for (long t = 0; t <= g.n(); ++t) {
      for (std::size_t j = 0; j < g.num_irreps(); ++j) {
        auto x = lb(g, t, j);
        CHECK(ext_dims(rt, x) == ext_dims(b, x));
      }
    }
  }
}

TEST_CASE("Hom spread over several degrees") {
  auto s = trivial(2);
  auto sum = EqComplex::direct_sum({lb(s, 0, 0), lb(s, 1, 0).shift(-1)});
  auto target = lb(s, 1, 0);
  CHECK(ext_dims(sum, target) == std::map<long, long>{{-1, 1}, {0, 2}});
  try {
    (void)right_mutation(sum, target);
    FAIL("expected NonConcentratedHom");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonConcentratedHom);
  }
}

TEST_CASE("cohomology representatives are cycles and composition works") {
  auto s = z3();
  auto a = lb(s, 0, 0), b = lb(s, 1, 1), c = lb(s, 2, 2);
  auto ab = cohomology_basis(a, b, 0);
  auto bc = cohomology_basis(b, c, 0);
  REQUIRE(ab.size() == 3);
  REQUIRE(bc.size() == 3);
  HomComplex h = hom_complex(a, c);
  std::vector<Vec> images;
  for (const auto& f : ab) {
    CHECK(is_chain_map(f));
    for (const auto& g : bc) {
      auto gf = compose(f, g);
      CHECK(is_chain_map(gf));
      images.push_back(flatten(h, gf));
    }
  }
  CHECK(rank_of(images, h.dim(0)) == 6);
  auto id = identity_map(a);
  CHECK(flatten(hom_complex(a, b), compose(id, ab[1])) == flatten(hom_complex(a, b), ab[1]));
}

TEST_CASE("twisting preserves Ext tables") {
  auto s = q8();
  auto cone = right_mutation(lb(s, 0, 2), lb(s, 1, 0));
  auto tw = cone.twist(3);
  CHECK(tw.min_twist() == 3);
  CHECK(ext_dims(tw, lb(s, 4, 1)) == ext_dims(cone, lb(s, 1, 1)));
  CHECK(ext_dims(tw, tw) == std::map<long, long>{{0, 1}});
}
