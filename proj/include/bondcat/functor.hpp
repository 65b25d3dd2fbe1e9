#pragma once

#include "bondcat/complexes.hpp"
#include "bondcat/cones.hpp"
#include "bondcat/kmatrix.hpp"

namespace bondcat {

/// Where a (path, degree) block landed in the Bondarenko image. Trivial
/// paths replicate: one block per poset element with the right target.
struct Placement {
  int path = 0;
  std::int64_t degree = 0;
  GradedElement row, col;
};

template <Scalar K>
struct ObjectImage {
  BondObject<K> object;
  std::vector<Placement> placements;
};

template <Scalar K>
struct MorphismImage {
  BondMorphism<K> morphism;
  std::vector<Placement> placements;
};

namespace detail {

/// Band sizes of F(P): element (m, len) at degree i carries d_{t(m,len), i}.
template <Scalar K>
std::map<GradedElement, std::size_t> functor_dims(const ProjComplex<K>& p) {
  const GentleAlgebra& alg = *p.algebra;
  std::map<GradedElement, std::size_t> dims;
  for (const auto& [key, n] : p.mult) {
    const auto& [vertex, degree] = key;
    for (int e : alg.elements_with_target(vertex))
      dims.emplace(GradedElement{e, degree}, n);
  }
  return dims;
}

}  // namespace detail

/// F on objects: nontrivial blocks go to their unique within-chain
/// placement, trivial blocks replicate over every element with the right
/// target vertex. Columns sit one degree above rows.
template <Scalar K>
ObjectImage<K> functor_object(const ProjComplex<K>& p) {
  const GentleAlgebra& alg = *p.algebra;
  ObjectImage<K> out;
  out.object.poset = alg.poset();
  out.object.dims = detail::functor_dims(p);
  for (const auto& [key, m] : p.diff) {
    const auto& [w, j] = key;
    const PathData& pd = alg.path(w);
    if (pd.trivial()) {
      for (int e : alg.elements_with_target(pd.source)) {
        GradedElement r{e, j}, c{e, j + 1};
        out.object.blocks.emplace(BlockKey{r, c}, m);
        out.placements.push_back(Placement{w, j, r, c});
      }
    } else {
      auto [re, ce] = alg.placement(w);
      GradedElement r{re, j}, c{ce, j + 1};
      out.object.blocks.emplace(BlockKey{r, c}, m);
      out.placements.push_back(Placement{w, j, r, c});
    }
  }
  out.object.normalize();
  return out;
}

/// F on morphisms: same placement rule on the diagonal degree (j = i).
template <Scalar K>
MorphismImage<K> functor_morphism(const ChainMap<K>& phi) {
  const GentleAlgebra& alg = *phi.source.algebra;
  MorphismImage<K> out;
  out.morphism.source = functor_object(phi.source).object;
  out.morphism.target = functor_object(phi.target).object;
  for (const auto& [key, m] : phi.blocks) {
    const auto& [w, j] = key;
    const PathData& pd = alg.path(w);
    if (pd.trivial()) {
      for (int e : alg.elements_with_target(pd.source)) {
        GradedElement r{e, j}, c{e, j};
        out.morphism.blocks.emplace(BlockKey{r, c}, m);
        out.placements.push_back(Placement{w, j, r, c});
      }
    } else {
      auto [re, ce] = alg.placement(w);
      GradedElement r{re, j}, c{ce, j};
      out.morphism.blocks.emplace(BlockKey{r, c}, m);
      out.placements.push_back(Placement{w, j, r, c});
    }
  }
  drop_zero_blocks(out.morphism.blocks);
  return out;
}

/// Recovers the chain map from its image using the placement rule; the
/// functor is faithful at chain level, so this inverts functor_morphism on
/// its image.
template <Scalar K>
ChainMap<K> functor_morphism_inverse(const BondMorphism<K>& img, const ProjComplex<K>& src,
                                     const ProjComplex<K>& dst) {
  const GentleAlgebra& alg = *src.algebra;
  ChainMap<K> out;
  out.source = src;
  out.target = dst;
  std::set<std::int64_t> degs = detail::degrees_of(src);
  for (std::size_t w = 0; w < alg.path_count(); ++w) {
    const PathData& pd = alg.path(static_cast<int>(w));
    for (std::int64_t j : degs) {
      if (src.d(pd.source, j) == 0 || dst.d(pd.target, j) == 0) continue;
      GradedElement r, c;
      if (pd.trivial()) {
        int e = alg.elements_with_target(pd.source).front();
        r = {e, j};
        c = {e, j};
      } else {
        auto [re, ce] = alg.placement(static_cast<int>(w));
        r = {re, j};
        c = {ce, j};
      }
      if (const Mat<K>* m = img.block(r, c); m && !m->is_zero())
        out.blocks.emplace(PathDeg{static_cast<int>(w), j}, *m);
    }
  }
  return out;
}

/// Prop "standard": F sends the standard triangle of phi to the K-standard
/// triangle of F(phi), as strict equalities of objects and morphisms.
template <Scalar K>
Report check_cone_compat(const ChainMap<K>& phi) {
  Report rep;
  ConeData<K> cd = mapping_cone(phi);
  MorphismImage<K> fphi = functor_morphism(phi);
  BondObject<K> lhs = functor_object(cd.cone).object;
  BondObject<K> rhs = cone(fphi.morphism);
  if (!(lhs == rhs)) rep.fail("F(C(phi)) != Omega_{F(phi)}");
  BondMorphism<K> fiota = functor_morphism(cd.iota).morphism;
  if (!(fiota == inclusion(fphi.morphism))) rep.fail("F(iota) != iota_{F(target)}");
  BondMorphism<K> fpi = functor_morphism(cd.pi).morphism;
  if (!(fpi == projection(fphi.morphism))) rep.fail("F(pi) != pi_{[[F(source)]]}");
  return rep;
}

/// Remark "[[ - ]] after F equals F after [1]" on both objects and maps.
template <Scalar K>
Report check_shift_compat(const ProjComplex<K>& p, const ChainMap<K>& phi) {
  Report rep;
  if (!(functor_object(shift_complex(p)).object == shift_object(functor_object(p).object)))
    rep.fail("F(P[1]) != [[F(P)]]");
  if (!(functor_morphism(shift_chain_map(phi)).morphism ==
        shift_morphism(functor_morphism(phi).morphism)))
    rep.fail("F(phi[1]) != [[F(phi)]]");
  return rep;
}

/// The witness dictionary of Prop "equiv", homotopy -> K-matrix: S_{w,j}
/// lands one degree below the diagonal at the placement of w.
template <Scalar K>
KMatrix<K> homotopy_to_kmatrix(const Homotopy<K>& s, const ChainMap<K>& phi) {
  const GentleAlgebra& alg = *phi.source.algebra;
  KMatrix<K> l{WitnessVariant::K, functor_object(phi.source).object,
               functor_object(phi.target).object, {}};
  for (const auto& [key, m] : s) {
    const auto& [w, j] = key;
    const PathData& pd = alg.path(w);
    if (pd.trivial()) {
      for (int e : alg.elements_with_target(pd.source))
        l.blocks.emplace(BlockKey{GradedElement{e, j}, GradedElement{e, j - 1}}, m);
    } else {
      auto [re, ce] = alg.placement(w);
      l.blocks.emplace(BlockKey{GradedElement{re, j}, GradedElement{ce, j - 1}}, m);
    }
  }
  drop_zero_blocks(l.blocks);
  return l;
}

/// The reverse dictionary: read S_{w,j} off the K-matrix at the canonical
/// placement of w. For a trivial path the paper leaves the choice of copy
/// implicit; we read the least element of the target class.
template <Scalar K>
Homotopy<K> kmatrix_to_homotopy(const KMatrix<K>& l, const ChainMap<K>& phi) {
  const GentleAlgebra& alg = *phi.source.algebra;
  const ProjComplex<K>& p = phi.source;
  const ProjComplex<K>& q = phi.target;
  Homotopy<K> s;
  std::set<std::int64_t> degs = detail::degrees_of(p);
  auto lblock = [&](const GradedElement& r, const GradedElement& c) -> const Mat<K>* {
    auto it = l.blocks.find({r, c});
    return it == l.blocks.end() ? nullptr : &it->second;
  };
  for (std::size_t w = 0; w < alg.path_count(); ++w) {
    const PathData& pd = alg.path(static_cast<int>(w));
    for (std::int64_t j : degs) {
      if (p.d(pd.source, j) == 0 || q.d(pd.target, j - 1) == 0) continue;
      const Mat<K>* m = nullptr;
      if (pd.trivial()) {
        int e = alg.elements_with_target(pd.source).front();
        m = lblock({e, j}, {e, j - 1});
      } else {
        auto [re, ce] = alg.placement(static_cast<int>(w));
        m = lblock({re, j}, {ce, j - 1});
      }
      if (m && !m->is_zero()) s.emplace(PathDeg{static_cast<int>(w), j}, *m);
    }
  }
  return s;
}

/// Slot aliasing that forces the K-system into the image of the dictionary:
/// the within-chain blocks at sigma-paired trivial copies are identified, so
/// the extracted homotopy is single-valued.
inline std::function<detail::Slot(const detail::Slot&)> dictionary_canon(
    const GentleAlgebra& alg) {
  return [&alg](const detail::Slot& s) {
    if (s.row.degree == s.col.degree + 1 && s.row.base == s.col.base) {
      int e = s.row.base;
      const auto& cls = alg.elements_with_target(alg.element_target(e));
      if (cls.size() == 2) {
        int canon = cls.front();  // least element of the target class
        return detail::Slot{GradedElement{canon, s.row.degree}, GradedElement{canon, s.col.degree},
                            s.i, s.j};
      }
    }
    return s;
  };
}

template <Scalar K>
struct HomotopyEquivReport {
  bool homotopic = false;
  bool k_equivalent = false;
  Report report;
};

/// Prop "equiv" verified mechanically: the homotopy solver and the K-matrix
/// solver must agree, and on yes-instances the proof's dictionary must carry
/// each witness to a valid witness on the other side.
template <Scalar K>
HomotopyEquivReport<K> check_homotopy_equiv(const ChainMap<K>& phi) {
  HomotopyEquivReport<K> out;
  ChainMap<K> zero = zero_chain_map(phi.source, phi.target);
  auto hw = homotopy_witness(phi, zero);
  MorphismImage<K> fphi = functor_morphism(phi);
  BondMorphism<K> fzero = zero_morphism(fphi.morphism.source, fphi.morphism.target);
  auto kw = find_witness(fphi.morphism, fzero, WitnessVariant::K);
  out.homotopic = hw.has_value();
  out.k_equivalent = kw.has_value();
  if (out.homotopic != out.k_equivalent) {
    out.report.fail("DecisionMismatch: homotopy solver and K-matrix solver disagree");
    return out;
  }
  if (!out.homotopic) return out;

  KMatrix<K> converted = homotopy_to_kmatrix(*hw, phi);
  Report cw = check_witness(fphi.morphism, fzero, converted);
  if (!cw.ok()) out.report.fail("dictionary image of the homotopy fails check_witness:\n" + cw.str());

  Homotopy<K> back = kmatrix_to_homotopy(*kw, phi);
  if (!homotopy_checks(phi, zero, back)) {
    // The solver's canonical witness need not be single-valued on paired
    // trivial copies; re-solve inside the dictionary image and extract again.
    const GentleAlgebra& alg = *phi.source.algebra;
    auto tied = find_witness(fphi.morphism, fzero, WitnessVariant::K, dictionary_canon(alg));
    if (!tied) {
      out.report.fail("DecisionMismatch: no dictionary-compatible K-matrix exists");
      return out;
    }
    back = kmatrix_to_homotopy(*tied, phi);
    if (!homotopy_checks(phi, zero, back))
      out.report.fail("dictionary preimage of the K-matrix fails the homotopy equations");
  }
  return out;
}

}  // namespace bondcat
