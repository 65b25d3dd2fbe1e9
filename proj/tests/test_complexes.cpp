#include <bondcat/generator.hpp>
#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace bondcat;
using fixtures::mat;

TEST_CASE("the worked complex and its endomorphism family validate") {
  AlgebraPtr alg = fixtures::a1();
  auto p = fixtures::ex34_complex<Rational>(alg);
  CHECK(validate_complex(p).ok());
  auto phi = fixtures::ex34_phi<Rational>(alg, p, 1, 2, 3, 4, 5, 6);
  CHECK(validate_chain_map(phi).ok());
}

TEST_CASE("dd = 0 is checked in the path basis, not in the algebra") {
  // P_1 -> P_1 -> P_1 with both differentials p(e_1): the product never
  // meets a relation, so the trivial-path component must cancel and does not
  AlgebraPtr alg = fixtures::a1();
  ProjComplex<Rational> p;
  p.algebra = alg;
  p.mult[{0, 0}] = p.mult[{0, 1}] = p.mult[{0, 2}] = 1;
  p.diff[{alg->path_id("e1"), 0}] = mat<Rational>(1, 1, {1});
  p.diff[{alg->path_id("e1"), 1}] = mat<Rational>(1, 1, {1});
  Report rep = validate_complex(p);
  CHECK(!rep.ok());
}

TEST_CASE("a bad shape is reported with its path and degree") {
  AlgebraPtr alg = fixtures::a1();
  auto p = fixtures::ex34_complex<Rational>(alg);
  p.diff[{alg->path_id("x"), 1}] = mat<Rational>(1, 1, {2});
  Report rep = validate_complex(p);
  CHECK(!rep.ok());
}

TEST_CASE("mapping cone of the worked endomorphism reproduces the printed blocks") {
  AlgebraPtr alg = fixtures::a1();
  auto p = fixtures::ex34_complex<Rational>(alg);
  auto phi = fixtures::ex34_phi<Rational>(alg, p, 1, 2, 3, 4, 5, 6);
  auto cd = mapping_cone(phi);
  CHECK(validate_complex(cd.cone).ok());
  CHECK(validate_chain_map(cd.iota).ok());
  CHECK(validate_chain_map(cd.pi).ok());

  // multiplicities: degree 0: P_1; degree 1: P_1^3 (+) P_2; degree 2: P_1^2 (+) P_2
  CHECK(cd.cone.d(0, 0) == 1);
  CHECK(cd.cone.d(0, 1) == 3);
  CHECK(cd.cone.d(1, 1) == 1);
  CHECK(cd.cone.d(0, 2) == 2);
  CHECK(cd.cone.d(1, 2) == 1);

  // printed d^0: rows are the P^1-part then the P~-part
  CHECK(cd.cone.block_or_zero(alg->path_id("e1"), 0) == mat<Rational>(1, 3, {0, -1, 2}));
  CHECK(cd.cone.block_or_zero(alg->path_id("x"), 0) == mat<Rational>(1, 3, {-2, 0, 6}));
  CHECK(cd.cone.block_or_zero(alg->path_id("a"), 0) == mat<Rational>(1, 1, {-1}));
  CHECK(cd.cone.block_or_zero(alg->path_id("ay"), 0) == mat<Rational>(1, 1, {-3}));
  CHECK(cd.cone.block_or_zero(alg->path_id("xay"), 0) == mat<Rational>(1, 1, {-2}));

  // printed d^1 blocks
  CHECK(cd.cone.block_or_zero(alg->path_id("e1"), 1) ==
        mat<Rational>(3, 2, {2, 0, 0, 2, 0, 1}));
  CHECK(cd.cone.block_or_zero(alg->path_id("x"), 1) == mat<Rational>(3, 2, {1, 3, 0, 6, 2, 0}));
  CHECK(cd.cone.block_or_zero(alg->path_id("e2"), 1) == mat<Rational>(1, 1, {2}));
  CHECK(cd.cone.block_or_zero(alg->path_id("a"), 1) == mat<Rational>(3, 1, {0, 0, 1}));
  CHECK(cd.cone.block_or_zero(alg->path_id("xa"), 1) == mat<Rational>(3, 1, {4, 6, 0}));
  CHECK(cd.cone.block_or_zero(alg->path_id("ay"), 1) == mat<Rational>(3, 1, {0, 0, 3}));
  CHECK(cd.cone.block_or_zero(alg->path_id("xay"), 1) == mat<Rational>(3, 1, {5, 18, 2}));
  CHECK(cd.cone.block_or_zero(alg->path_id("y"), 1) == mat<Rational>(1, 1, {0}));
}

TEST_CASE("cone of zero and of the identity") {
  AlgebraPtr alg = fixtures::a1();
  auto p = fixtures::ex34_complex<Rational>(alg);
  {
    auto z = zero_chain_map(p, p);
    auto cd = mapping_cone(z);
    CHECK(cd.cone == direct_sum(shift_complex(p), p));
  }
  {
    ProjComplex<Rational> empty;
    empty.algebra = alg;
    auto z = zero_chain_map(p, empty);
    CHECK(mapping_cone(z).cone == shift_complex(p));
  }
  {
    auto cd = mapping_cone(identity_chain_map(p));
    auto h = homotopy_witness(identity_chain_map(cd.cone), zero_chain_map(cd.cone, cd.cone));
    REQUIRE(h);  // cone of the identity is null-homotopic
    CHECK(homotopy_checks(identity_chain_map(cd.cone), zero_chain_map(cd.cone, cd.cone), *h));
  }
}

TEST_CASE("shift conventions") {
  AlgebraPtr alg = fixtures::a1();
  auto p = fixtures::ex34_complex<Rational>(alg);
  CHECK(shift_complex(p, 0) == p);
  CHECK(shift_complex(shift_complex(p), -1) == p);
  auto p1 = shift_complex(p);
  CHECK(p1.d(0, 0) == 1);
  CHECK(p1.block_or_zero(alg->path_id("x"), 0) == mat<Rational>(1, 2, {-2, 0}));
  auto phi = fixtures::ex34_phi<Rational>(alg, p, 1, 2, 3, 4, 5, 6);
  CHECK(validate_chain_map(shift_chain_map(phi)).ok());
}

TEST_CASE("homotopy of the exem3.6 endomorphism") {
  AlgebraPtr alg = fixtures::a1();
  auto p = fixtures::exem36_complex<Rational>(alg);
  auto phi = fixtures::exem36_phi<Rational>(alg, p);
  REQUIRE(validate_chain_map(phi).ok());
  auto h = homotopy_witness(phi, zero_chain_map(p, p));
  REQUIRE(h);
  CHECK(homotopy_checks(phi, zero_chain_map(p, p), *h));
  // the paper's witness: s^2 = p(e_1)
  Homotopy<Rational> paper;
  paper.emplace(PathDeg{alg->path_id("e1"), 2}, mat<Rational>(1, 1, {1}));
  CHECK(homotopy_checks(phi, zero_chain_map(p, p), paper));
}

TEST_CASE("phi ~ psi iff phi - psi ~ 0") {
  Gf::set_modulus(5);
  Generator<Gf> gen(606);
  for (int trial = 0; trial < 8; ++trial) {
    AlgebraPtr alg = gen.algebra();
    auto p = gen.complex(alg);
    auto q = gen.complex(alg);
    auto f = gen.chain_map(p, q);
    auto g = gen.chain_map(p, q);
    auto h1 = homotopy_witness(f, g);
    auto h2 = homotopy_witness(sub_chain_maps(f, g), zero_chain_map(p, q));
    CHECK(h1.has_value() == h2.has_value());
    if (h1) CHECK(homotopy_checks(f, g, *h1));
  }
}

TEST_CASE("generator emits valid complexes and chain maps; cones validate") {
  Gf::set_modulus(5);
  Generator<Gf> gen(9091);
  for (int trial = 0; trial < 10; ++trial) {
    AlgebraPtr alg = gen.algebra();
    auto p = gen.complex(alg);
    REQUIRE(validate_complex(p).ok());
    auto q = gen.complex(alg);
    auto f = gen.chain_map(p, q);
    REQUIRE(validate_chain_map(f).ok());
    auto cd = mapping_cone(f);
    CHECK(validate_complex(cd.cone).ok());
    CHECK(validate_chain_map(cd.iota).ok());
    CHECK(validate_chain_map(cd.pi).ok());
    CHECK(compose_chain_maps(identity_chain_map(p), f) == f);
    CHECK(compose_chain_maps(f, identity_chain_map(q)) == f);
  }
}

TEST_CASE("homotopies compose: witnesses transport along compositions") {
  Gf::set_modulus(5);
  Generator<Gf> gen(7171);
  for (int trial = 0; trial < 6; ++trial) {
    AlgebraPtr alg = gen.algebra();
    // the identity of a cone of an identity is always null-homotopic
    auto p = mapping_cone(identity_chain_map(gen.complex(alg, 1))).cone;
    auto q = p;
    auto r = gen.complex(alg, 1);
    auto f = identity_chain_map(p);
    auto g = gen.chain_map(q, r);
    auto z = zero_chain_map(p, q);
    auto hf = homotopy_witness(f, z);
    REQUIRE(hf);
    // f ~ 0 implies f g ~ 0 with the composite witness (s g)_{w,j} built by
    // the same path-splitting rule as chain map composition, one degree down
    const GentleAlgebra& ga = *p.algebra;
    Homotopy<Gf> sg;
    auto s_block = [&](int w, std::int64_t j) {
      auto it = hf->find({w, j});
      if (it != hf->end()) return it->second;
      const PathData& pd = ga.path(w);
      return Mat<Gf>(p.d(pd.source, j), q.d(pd.target, j - 1));
    };
    for (std::size_t w = 0; w < ga.path_count(); ++w) {
      const PathData& pd = ga.path(static_cast<int>(w));
      for (const auto& [key, n] : p.mult) {
        (void)n;
        if (key.first != pd.source) continue;
        std::int64_t j = key.second;
        std::size_t rows = p.d(pd.source, j), cols = r.d(pd.target, j - 1);
        if (rows == 0 || cols == 0) continue;
        Mat<Gf> acc(rows, cols);
        for (const auto& [w1, w2] : ga.factorizations(static_cast<int>(w)))
          acc = acc + s_block(w1, j) * g.block_or_zero(w2, j - 1);
        if (!acc.is_zero()) sg.emplace(PathDeg{static_cast<int>(w), j}, std::move(acc));
      }
    }
    auto fg = compose_chain_maps(f, g);
    CHECK(homotopy_checks(fg, zero_chain_map(p, r), sg));
  }
}
