#include <bondcat/generator.hpp>
#include <bondcat/morphism.hpp>
#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace bondcat;
using fixtures::mat;

TEST_CASE("the printed 4x4 object validates") {
  PosetPtr p = fixtures::triangulo_poset();
  auto b = fixtures::triangulo_B<Rational>(p);
  CHECK(validate_object(b).ok());
  CHECK(validate_object(zero_object<Rational>(p)).ok());
}

TEST_CASE("adding the transposed block breaks B^2 = 0") {
  PosetPtr p = fixtures::triangulo_poset();
  std::map<GradedElement, std::size_t> dims{{{0, 1}, 1}, {{2, 1}, 1}, {{1, 2}, 1}, {{3, 2}, 1}};
  BlockMap<Rational> blocks;
  blocks.emplace(BlockKey{{0, 1}, {1, 2}}, mat<Rational>(1, 1, {1}));
  blocks.emplace(BlockKey{{1, 2}, {0, 1}}, mat<Rational>(1, 1, {1}));
  auto b = make_object<Rational>(p, std::move(dims), std::move(blocks));
  Report rep = validate_object(b);
  CHECK(!rep.ok());
  bool at_u1 = false;
  for (const auto& pr : rep.problems) at_u1 = at_u1 || pr.find("([u,1],[u,1])") != std::string::npos;
  CHECK(at_u1);
}

TEST_CASE("sigma-paired band sizes are enforced") {
  PosetPtr p = fixtures::triangulo_poset();
  auto b = make_object<Rational>(p, {{{0, 1}, 2}, {{2, 1}, 1}}, {});
  CHECK(!validate_object(b).ok());
}

TEST_CASE("the printed morphism T validates, its endomorphism cousin fails (b)") {
  PosetPtr p = fixtures::triangulo_poset();
  auto t = fixtures::triangulo_T<Rational>(p);
  CHECK(validate_object(t.source).ok());
  CHECK(validate_object(t.target).ok());
  CHECK(validate_morphism(t).ok());
  CHECK(validate_morphism(identity(t.source)).ok());

  // diagonal (1,1,2,2) respects (c) and (d) but breaks TB = BT: the
  // intertwining couples t_u with t_a through the block B_{u_1}^{a_2}
  auto b = t.source;
  BlockMap<Rational> blocks;
  blocks.emplace(BlockKey{{0, 1}, {0, 1}}, mat<Rational>(1, 1, {1}));
  blocks.emplace(BlockKey{{2, 1}, {2, 1}}, mat<Rational>(1, 1, {1}));
  blocks.emplace(BlockKey{{1, 2}, {1, 2}}, mat<Rational>(1, 1, {2}));
  blocks.emplace(BlockKey{{3, 2}, {3, 2}}, mat<Rational>(1, 1, {2}));
  auto bad = make_morphism(b, b, std::move(blocks));
  Report rep = validate_morphism(bad);
  CHECK(!rep.ok());
  bool cond_b = false;
  for (const auto& pr : rep.problems) cond_b = cond_b || pr.find("condition (b)") != std::string::npos;
  CHECK(cond_b);
}

TEST_CASE("triangularity and sigma-diagonal violations are reported") {
  PosetPtr p = fixtures::triangulo_poset();
  auto b = fixtures::triangulo_B<Rational>(p);
  {
    BlockMap<Rational> blocks;
    blocks.emplace(BlockKey{{1, 2}, {0, 1}}, mat<Rational>(1, 1, {3}));  // a_2 > u_1
    auto bad = make_morphism(b, b, std::move(blocks));
    Report rep = validate_morphism(bad);
    bool cond_c = false;
    for (const auto& pr : rep.problems) cond_c = cond_c || pr.find("condition (c)") != std::string::npos;
    CHECK(cond_c);
  }
  {
    BlockMap<Rational> blocks;  // equal scalars everywhere except the b_2 slot
    blocks.emplace(BlockKey{{0, 1}, {0, 1}}, mat<Rational>(1, 1, {1}));
    blocks.emplace(BlockKey{{2, 1}, {2, 1}}, mat<Rational>(1, 1, {1}));
    blocks.emplace(BlockKey{{1, 2}, {1, 2}}, mat<Rational>(1, 1, {1}));
    blocks.emplace(BlockKey{{3, 2}, {3, 2}}, mat<Rational>(1, 1, {4}));
    auto bad = make_morphism(b, b, std::move(blocks));
    Report rep = validate_morphism(bad);
    bool cond_d = false;
    for (const auto& pr : rep.problems) cond_d = cond_d || pr.find("condition (d)") != std::string::npos;
    CHECK(cond_d);
  }
}

TEST_CASE("additive structure") {
  PosetPtr p = fixtures::triangulo_poset();
  auto t = fixtures::triangulo_T<Rational>(p);
  auto z = zero_morphism(t.source, t.target);
  CHECK(add(t, z) == t);
  CHECK(compose(t, identity(t.target)) == t);
  CHECK(compose(identity(t.source), t) == t);
  CHECK(scale(Rational(0), t) == z);
  CHECK(add(t, scale(Rational(-1), t)) == z);

  auto b = t.source;
  CHECK(direct_sum(zero_object<Rational>(p), b) == b);
  auto bb = direct_sum(b, b);
  CHECK(bb.dim({0, 1}) == 2);
  CHECK(validate_object(bb).ok());
  CHECK(validate_morphism(direct_sum(t, t)).ok());
}

TEST_CASE("identity blocks are identity matrices on the diagonal only") {
  PosetPtr p = fixtures::triangulo_poset();
  auto b = fixtures::triangulo_B<Rational>(p);
  auto id = identity(b);
  for (const auto& [key, m] : id.blocks) {
    CHECK(key.first == key.second);
    CHECK(m == Mat<Rational>::identity(b.dim(key.first)));
  }
  CHECK(id.blocks.size() == b.dims.size());
}

TEST_CASE("shift negates object blocks, reindexes morphisms, and squares away") {
  PosetPtr p = fixtures::triangulo_poset();
  auto b = fixtures::triangulo_B<Rational>(p);
  auto sb = shift_object(b);
  CHECK(sb.block_or_zero({0, 0}, {1, 1}) == mat<Rational>(1, 1, {1}));
  CHECK(sb.block_or_zero({2, 0}, {3, 1}) == mat<Rational>(1, 1, {-1}));
  CHECK(validate_object(sb).ok());
  CHECK(shift_object(zero_object<Rational>(p)) == zero_object<Rational>(p));

  auto s2 = shift_object(b, 2);
  CHECK(s2 == shift_object(shift_object(b)));
  CHECK(s2.block_or_zero({0, -1}, {1, 0}) == mat<Rational>(1, 1, {-1}));  // signs cancel
  CHECK(shift_object(b, 0) == b);
  CHECK(shift_object(sb, -1) == b);
}

TEST_CASE("random morphisms validate; composition is associative; shift is functorial") {
  Gf::set_modulus(5);
  Generator<Gf> gen(42);
  for (int trial = 0; trial < 12; ++trial) {
    PosetPtr p = gen.poset();
    auto b = gen.object(p), c = gen.object(p), d = gen.object(p), e = gen.object(p);
    REQUIRE(validate_object(b).ok());
    REQUIRE(validate_object(c).ok());
    auto f = gen.morphism(b, c), g = gen.morphism(c, d), h = gen.morphism(d, e);
    REQUIRE(validate_morphism(f).ok());
    REQUIRE(validate_morphism(g).ok());
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    CHECK(shift_morphism(compose(f, g)) == compose(shift_morphism(f), shift_morphism(g)));
    CHECK(shift_morphism(identity(b)) == identity(shift_object(b)));
    CHECK(validate_morphism(shift_morphism(f)).ok());
  }
}
