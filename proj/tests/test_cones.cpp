#include <bondcat/generator.hpp>
#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"

using namespace bondcat;
using fixtures::mat;

namespace {
BondMorphism<Rational> T() { return fixtures::triangulo_T<Rational>(fixtures::triangulo_poset()); }
}  // namespace

TEST_CASE("the printed 8x8 cone") {
  auto t = T();
  auto omega = cone(t);
  // bands of size two at u_0, v_0, a_1, b_1
  for (int base : {0, 1, 2, 3}) CHECK(omega.dim({base, base % 2 == 0 ? 0 : 1}) == 2);
  CHECK(omega.blocks.size() == 2);
  CHECK(omega.block_or_zero({0, 0}, {1, 1}) == mat<Rational>(2, 2, {1, 1, 0, 1}));
  CHECK(omega.block_or_zero({2, 0}, {3, 1}) == mat<Rational>(2, 2, {-1, 1, 0, -1}));
  CHECK(validate_object(omega).ok());
}

TEST_CASE("the printed inclusion and projection") {
  auto t = T();
  auto i = inclusion(t);
  auto p = projection(t);
  CHECK(validate_morphism(i).ok());
  CHECK(validate_morphism(p).ok());
  for (const auto& [key, m] : i.blocks) {
    CHECK(key.first == key.second);
    CHECK(m == mat<Rational>(1, 2, {0, 1}));
  }
  CHECK(i.blocks.size() == 4);
  for (const auto& [key, m] : p.blocks) {
    CHECK(key.first == key.second);
    CHECK(m == mat<Rational>(2, 1, {1, 0}));
  }
  CHECK(p.blocks.size() == 4);

  // C iota = iota Omega_T holds exactly
  CHECK(block_eq(block_mul(i.source.blocks, i.blocks), block_mul(i.blocks, i.target.blocks)));

  // iota then pi crosses the zero corner
  CHECK(compose(i, p) == zero_morphism(i.source, p.target));

  // T then iota embeds T into the C-columns
  auto ti = compose(t, i);
  CHECK(ti.block_or_zero({0, 1}, {1, 1}) == mat<Rational>(1, 2, {0, 1}));
  CHECK(ti.block_or_zero({2, 1}, {3, 1}) == mat<Rational>(1, 2, {0, 1}));
  CHECK(ti.blocks.size() == 2);
}

TEST_CASE("standard triangle assembles and validates") {
  auto t = T();
  auto tri = standard_triangle(t);
  CHECK(validate_triangle(tri).ok());
  CHECK(tri.Y == shift_object(tri.X));

  PosetPtr p = t.source.poset;
  auto zero_tri = standard_triangle(identity(zero_object<Rational>(p)));
  CHECK(zero_tri.Z.is_zero_object());
  CHECK(validate_triangle(zero_tri).ok());
}

TEST_CASE("cone of a zero morphism is the mixing-free direct sum") {
  auto t = T();
  auto z = zero_morphism(t.source, t.target);
  auto omega = cone(z);
  CHECK(omega == direct_sum(shift_object(t.source), t.target));
}

TEST_CASE("cone never commutes with shift naively: [[cone T]] = cone(-[[T]])") {
  auto t = T();
  CHECK(shift_object(cone(t)) == cone(scale(Rational(-1), shift_morphism(t))));
  Gf::set_modulus(5);
  Generator<Gf> gen(7);
  PosetPtr p = gen.poset();
  auto b = gen.object(p), c = gen.object(p);
  auto f = gen.morphism(b, c);
  CHECK(shift_object(cone(f)) == cone(scale(Gf(-1), shift_morphism(f))));
}

TEST_CASE("rotation witnesses on the paper example") {
  auto t = T();
  auto rot = rotation_witnesses(t);
  CHECK(validate_morphism(rot.R).ok());
  CHECK(validate_morphism(rot.S).ok());
  CHECK(compose(rot.R, rot.S) == identity(shift_object(t.source)));

  // iota_{Omega_T} S = pi_{[[B]]} exactly
  auto iota_c = inclusion(t);
  CHECK(compose(inclusion(iota_c), rot.S) == projection(t));

  // pi_{[[C]]} + S [[T]] = Omega L + L [[C]] via the witness interface
  auto pi_c = projection(iota_c);
  auto lhs2 = scale(Rational(-1), compose(rot.S, shift_morphism(t)));
  CHECK(check_witness(pi_c, lhs2, rot.L_comm).ok());

  // Id - SR = Omega L + L Omega
  CHECK(check_witness(identity(rot.S.source), compose(rot.S, rot.R), rot.L_inv).ok());
}

TEST_CASE("rotation with a zero morphism still satisfies RS = Id") {
  auto t = T();
  auto z = zero_morphism(t.source, t.target);
  auto rot = rotation_witnesses(z);
  CHECK(compose(rot.R, rot.S) == identity(shift_object(t.source)));
}

TEST_CASE("tr3 with identity walls is the identity fill-in") {
  auto t = T();
  KMatrix<Rational> zero_l{WitnessVariant::K, t.source, t.target, {}};
  auto h = tr3_fill(t, t, identity(t.source), identity(t.target), zero_l);
  CHECK(h == identity(cone(t)));
  CHECK(validate_morphism(h).ok());
}

TEST_CASE("tr3 rejects a witness that fails its certificate") {
  auto t = T();
  // TG - FT2 = 0 here, so any L with BL + LC != 0 must be rejected
  BlockMap<Rational> lb;
  lb.emplace(BlockKey{GradedElement{1, 2}, GradedElement{1, 1}}, mat<Rational>(1, 1, {1}));
  KMatrix<Rational> l{WitnessVariant::K, t.source, t.target, std::move(lb)};
  CHECK_THROWS_AS(tr3_fill(t, t, identity(t.source), identity(t.target), l), WitnessInvalid);
}

TEST_CASE("octahedron of identities validates") {
  auto t = T();
  auto id = identity(t.source);
  auto oct = octahedron(id, id);
  CHECK(validate_morphism(oct.F).ok());
  CHECK(validate_morphism(oct.G).ok());
  CHECK(validate_morphism(oct.Lambda).ok());
  CHECK(check_witness(inclusion(oct.F), compose(oct.G, oct.Lambda), oct.L_rot).ok());
}

TEST_CASE("octahedron on the paper morphism satisfies its exact identities") {
  auto t = T();
  auto iota_c = inclusion(t);  // [[B]] -> Omega_T, composable with t
  auto oct = octahedron(t, iota_c);
  CHECK(validate_morphism(oct.F).ok());
  CHECK(validate_morphism(oct.G).ok());
  CHECK(validate_morphism(oct.Lambda).ok());

  const auto& s = t;
  // first diagram: iota_C F = S' iota, iota G = iota, pi = F pi, pi [[S]] = G pi
  CHECK(compose(inclusion(s), oct.F) == compose(iota_c, inclusion(compose(s, iota_c))));
  CHECK(compose(inclusion(compose(s, iota_c)), oct.G) == inclusion(iota_c));
  CHECK(projection(s) == compose(oct.F, projection(compose(s, iota_c))));
  CHECK(compose(projection(compose(s, iota_c)), shift_morphism(s)) ==
        compose(oct.G, projection(iota_c)));

  // Lambda pi_{[[Omega_S]]} = pi_{[[C]]} iota_{[[C]]} exactly
  CHECK(compose(oct.Lambda, projection(oct.F)) ==
        compose(projection(iota_c), shifted_inclusion(s)));

  // iota_{Omega_ST} - G Lambda = Omega L + L Omega_F with the printed L
  CHECK(check_witness(inclusion(oct.F), compose(oct.G, oct.Lambda), oct.L_rot).ok());
  // the Lambda square commutes exactly: the zero witness certifies it
  CHECK(check_witness(compose(oct.Lambda, projection(oct.F)),
                      compose(projection(iota_c), shifted_inclusion(s)), oct.L_comm)
            .ok());
}

TEST_CASE("cone respects direct sums up to the band permutation") {
  Gf::set_modulus(5);
  Generator<Gf> gen(99);
  PosetPtr p = gen.poset();
  auto b = gen.object(p, 1), c = gen.object(p, 1), b2 = gen.object(p, 1), c2 = gen.object(p, 1);
  auto f = gen.morphism(b, c);
  auto g = gen.morphism(b2, c2);
  auto lhs = cone(direct_sum(f, g));
  auto rhs = direct_sum(cone(f), cone(g));
  REQUIRE(lhs.dims == rhs.dims);

  // the canonical permutation morphism is a strict two-sided iso
  detail::BlockBuilder<Gf> pb(lhs.dims, rhs.dims);
  for (const auto& [x, n] : lhs.dims) {
    (void)n;
    std::size_t bu = b.dim(shifted(x, 1)), b2u = b2.dim(shifted(x, 1));
    std::size_t cd = c.dim(x), c2d = c2.dim(x);
    Mat<Gf> perm(bu + b2u + cd + c2d, bu + cd + b2u + c2d);
    for (std::size_t i = 0; i < bu; ++i) perm.at(i, i) = Gf(1);
    for (std::size_t i = 0; i < b2u; ++i) perm.at(bu + i, bu + cd + i) = Gf(1);
    for (std::size_t i = 0; i < cd; ++i) perm.at(bu + b2u + i, bu + i) = Gf(1);
    for (std::size_t i = 0; i < c2d; ++i) perm.at(bu + b2u + cd + i, bu + cd + b2u + i) = Gf(1);
    pb.paste(x, x, 0, 0, perm);
  }
  BondMorphism<Gf> perm{lhs, rhs, pb.take()};
  CHECK(validate_morphism(perm).ok());

  // strict two-sided inverse: transpose every permutation block
  detail::BlockBuilder<Gf> qb(rhs.dims, lhs.dims);
  for (const auto& [key, m] : perm.blocks) {
    Mat<Gf> tr(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) tr.at(j, i) = m.at(i, j);
    qb.paste(key.second, key.first, 0, 0, tr);
  }
  BondMorphism<Gf> perm_inv{rhs, lhs, qb.take()};
  CHECK(validate_morphism(perm_inv).ok());
  CHECK(compose(perm, perm_inv) == identity(lhs));
  CHECK(compose(perm_inv, perm) == identity(rhs));

  // and the solver certifies it as a quotient isomorphism
  auto cert = is_iso_in_quotient(perm);
  REQUIRE(cert);
  CHECK(check_witness(compose(perm, cert->inverse), identity(lhs), cert->l1).ok());
  CHECK(check_witness(compose(cert->inverse, perm), identity(rhs), cert->l2).ok());
}

TEST_CASE("consecutive maps of a standard triangle compose to zero or null") {
  Gf::set_modulus(5);
  Generator<Gf> gen(1234);
  for (int trial = 0; trial < 6; ++trial) {
    PosetPtr p = gen.poset();
    auto b = gen.object(p), c = gen.object(p);
    auto t = gen.morphism(b, c);
    auto tri = standard_triangle(t);
    CHECK(validate_triangle(tri).ok());
    CHECK(compose(tri.v, tri.w) == zero_morphism(tri.Y, shift_object(tri.X)));
    // T iota ~ 0: certified by the explicit K-matrix [0; Id; ...]  -- here
    // we simply ask the solver
    auto w = find_witness(compose(tri.u, tri.v), zero_morphism(tri.X, tri.Z), WitnessVariant::K);
    REQUIRE(w);
    CHECK(check_witness(compose(tri.u, tri.v), zero_morphism(tri.X, tri.Z), *w).ok());
  }
}
