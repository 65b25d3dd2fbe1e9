#pragma once

// Shared worked examples used across the suites: the abstract 4-element
// poset triangle, the two gentle algebras A1/A2, and the complexes built
// over them.

#include <bondcat/complexes.hpp>
#include <bondcat/cones.hpp>
#include <bondcat/functor.hpp>
#include <bondcat/gentle.hpp>

namespace fixtures {

using namespace bondcat;

template <Scalar K>
Mat<K> mat(std::size_t r, std::size_t c, std::vector<long long> entries) {
  std::vector<K> e;
  e.reserve(entries.size());
  for (long long x : entries) e.push_back(K(x));
  return Mat<K>(r, c, std::move(e));
}

// poset {u < a < v < b}, sigma(u)=v, sigma(a)=b
inline PosetPtr triangulo_poset() {
  return make_poset({"u", "a", "v", "b"}, std::vector<int>{2, 3, 0, 1});
}

// B with bands of size one at u_1, v_1, a_2, b_2; B_{u_1}^{a_2} = -1,
// B_{v_1}^{b_2} = 1
template <Scalar K>
BondObject<K> triangulo_B(const PosetPtr& p) {
  std::map<GradedElement, std::size_t> dims{
      {{0, 1}, 1}, {{2, 1}, 1}, {{1, 2}, 1}, {{3, 2}, 1}};
  BlockMap<K> blocks;
  blocks.emplace(BlockKey{{0, 1}, {1, 2}}, mat<K>(1, 1, {-1}));
  blocks.emplace(BlockKey{{2, 1}, {3, 2}}, mat<K>(1, 1, {1}));
  return make_object<K>(p, std::move(dims), std::move(blocks));
}

// T: B -> [[B]] with blocks 1 at (u_1, a_1) and (v_1, b_1)
template <Scalar K>
BondMorphism<K> triangulo_T(const PosetPtr& p) {
  BondObject<K> b = triangulo_B<K>(p);
  BondObject<K> sb = shift_object(b);
  BlockMap<K> blocks;
  blocks.emplace(BlockKey{{0, 1}, {1, 1}}, mat<K>(1, 1, {1}));
  blocks.emplace(BlockKey{{2, 1}, {3, 1}}, mat<K>(1, 1, {1}));
  return make_morphism(std::move(b), std::move(sb), std::move(blocks));
}

// A1: loop x at 1, arrow a: 1 -> 2, loop y at 2; relations x^2, y^2
inline AlgebraPtr a1() {
  Quiver q{{"1", "2"}, {{"x", 0, 0}, {"a", 0, 1}, {"y", 1, 1}}};
  return std::make_shared<GentleAlgebra>(q, std::set<std::pair<int, int>>{{0, 0}, {2, 2}});
}

// A2: Kronecker, arrows a, b: 1 -> 2, no relations
inline AlgebraPtr a2() {
  Quiver q{{"1", "2"}, {{"a", 0, 1}, {"b", 0, 1}}};
  return std::make_shared<GentleAlgebra>(q, std::set<std::pair<int, int>>{});
}

// P: P_1 at degree 1 -> P_1^2 (+) P_2 at degree 2 with
// d^1 = (2 p(x), p(e_1), p(a) + 3 p(ay) + 2 p(xay))
template <Scalar K>
ProjComplex<K> ex34_complex(const AlgebraPtr& alg) {
  ProjComplex<K> p;
  p.algebra = alg;
  p.mult[{0, 1}] = 1;
  p.mult[{0, 2}] = 2;
  p.mult[{1, 2}] = 1;
  p.diff[{alg->path_id("e1"), 1}] = mat<K>(1, 2, {0, 1});
  p.diff[{alg->path_id("x"), 1}] = mat<K>(1, 2, {2, 0});
  p.diff[{alg->path_id("a"), 1}] = mat<K>(1, 1, {1});
  p.diff[{alg->path_id("ay"), 1}] = mat<K>(1, 1, {3});
  p.diff[{alg->path_id("xay"), 1}] = mat<K>(1, 1, {2});
  return p;
}

// The parametric endomorphism family of the same complex.
template <Scalar K>
ChainMap<K> ex34_phi(const AlgebraPtr& alg, const ProjComplex<K>& p, long long alpha,
                     long long beta, long long gamma, long long delta, long long eps,
                     long long lambda) {
  ChainMap<K> f;
  f.source = f.target = p;
  f.blocks[{alg->path_id("e1"), 1}] = mat<K>(1, 1, {beta});
  f.blocks[{alg->path_id("x"), 1}] = mat<K>(1, 1, {lambda});
  f.blocks[{alg->path_id("e1"), 2}] = mat<K>(2, 2, {beta, 0, 0, beta});
  f.blocks[{alg->path_id("e2"), 2}] = mat<K>(1, 1, {beta});
  f.blocks[{alg->path_id("x"), 2}] = mat<K>(2, 2, {alpha, gamma, 0, lambda});
  f.blocks[{alg->path_id("xa"), 2}] = mat<K>(2, 1, {delta, lambda});
  f.blocks[{alg->path_id("xay"), 2}] = mat<K>(2, 1, {eps, 3 * lambda});
  f.normalize();
  return f;
}

// exem3.6: P_1 -> P_1 with d^1 = p(x) + p(e_1) and phi^1 = phi^2 = d^1
template <Scalar K>
ProjComplex<K> exem36_complex(const AlgebraPtr& alg) {
  ProjComplex<K> p;
  p.algebra = alg;
  p.mult[{0, 1}] = 1;
  p.mult[{0, 2}] = 1;
  p.diff[{alg->path_id("e1"), 1}] = mat<K>(1, 1, {1});
  p.diff[{alg->path_id("x"), 1}] = mat<K>(1, 1, {1});
  return p;
}

template <Scalar K>
ChainMap<K> exem36_phi(const AlgebraPtr& alg, const ProjComplex<K>& p) {
  ChainMap<K> f;
  f.source = f.target = p;
  f.blocks[{alg->path_id("e1"), 1}] = mat<K>(1, 1, {1});
  f.blocks[{alg->path_id("x"), 1}] = mat<K>(1, 1, {1});
  f.blocks[{alg->path_id("e1"), 2}] = mat<K>(1, 1, {1});
  f.blocks[{alg->path_id("x"), 2}] = mat<K>(1, 1, {1});
  return f;
}

}  // namespace fixtures
