#pragma once

#include "bondcat/kmatrix.hpp"
#include "bondcat/morphism.hpp"

namespace bondcat {

template <Scalar K>
struct Triangle {
  BondObject<K> X, Y, Z;
  BondMorphism<K> u, v, w;  // X -> Y -> Z -> [[X]]
};

template <Scalar K>
Report validate_triangle(const Triangle<K>& t) {
  Report rep;
  rep.merge(validate_object(t.X), "X");
  rep.merge(validate_object(t.Y), "Y");
  rep.merge(validate_object(t.Z), "Z");
  if (!(t.u.source == t.X && t.u.target == t.Y)) rep.fail("u is not X -> Y");
  if (!(t.v.source == t.Y && t.v.target == t.Z)) rep.fail("v is not Y -> Z");
  if (!(t.w.source == t.Z && t.w.target == shift_object(t.X))) rep.fail("w is not Z -> [[X]]");
  rep.merge(validate_morphism(t.u), "u");
  rep.merge(validate_morphism(t.v), "v");
  rep.merge(validate_morphism(t.w), "w");
  return rep;
}

namespace detail {

/// Blockwise builder over a fixed pair of band-size tables.
template <Scalar K>
class BlockBuilder {
 public:
  BlockBuilder(const std::map<GradedElement, std::size_t>& row_dims,
               const std::map<GradedElement, std::size_t>& col_dims)
      : rows_(&row_dims), cols_(&col_dims) {}

  /// Pastes `piece` into the (r, c) block at sub-position (r0, c0).
  void paste(const GradedElement& r, const GradedElement& c, std::size_t r0, std::size_t c0,
             const Mat<K>& piece) {
    if (piece.empty_shape()) return;
    auto [slot, fresh] = blocks_.try_emplace(BlockKey{r, c}, Mat<K>(dim(*rows_, r), dim(*cols_, c)));
    (void)fresh;
    slot->second.paste(r0, c0, piece);
  }

  BlockMap<K> take() {
    drop_zero_blocks(blocks_);
    return std::move(blocks_);
  }

 private:
  static std::size_t dim(const std::map<GradedElement, std::size_t>& d, const GradedElement& x) {
    auto it = d.find(x);
    return it == d.end() ? 0 : it->second;
  }
  const std::map<GradedElement, std::size_t>* rows_;
  const std::map<GradedElement, std::size_t>* cols_;
  BlockMap<K> blocks_;
};

/// Band table of a cone: size at x is b.dim(x shifted up) + c.dim(x).
template <Scalar K>
std::map<GradedElement, std::size_t> cone_dims(const BondObject<K>& b, const BondObject<K>& c) {
  std::map<GradedElement, std::size_t> dims;
  for (const auto& [x, n] : b.dims) dims[shifted(x, -1)] += n;
  for (const auto& [x, n] : c.dims) dims[x] += n;
  return dims;
}

}  // namespace detail

/// The cone object Omega_T of a morphism T: B -> C. Inside every graded
/// element the [[B]]-rows/columns come first, then the C ones, matching the
/// paper's 2x2 block display.
template <Scalar K>
BondObject<K> cone(const BondMorphism<K>& t) {
  const BondObject<K>& b = t.source;
  const BondObject<K>& c = t.target;
  BondObject<K> out;
  out.poset = b.poset;
  out.dims = detail::cone_dims(b, c);

  detail::BlockBuilder<K> bb(out.dims, out.dims);
  for (const auto& [key, m] : b.blocks)
    bb.paste(shifted(key.first, -1), shifted(key.second, -1), 0, 0, -m);
  for (const auto& [key, m] : t.blocks) {
    GradedElement r = shifted(key.first, -1);
    bb.paste(r, key.second, 0, b.dim(shifted(key.second, 1)) /* skip [[B]] columns */, m);
  }
  for (const auto& [key, m] : c.blocks)
    bb.paste(key.first, key.second, b.dim(shifted(key.first, 1)),
             b.dim(shifted(key.second, 1)), m);
  out.blocks = bb.take();
  out.normalize();
  return out;
}

/// iota_C: C -> Omega_T, the identity columns into the C-part.
template <Scalar K>
BondMorphism<K> inclusion(const BondMorphism<K>& t) {
  const BondObject<K>& b = t.source;
  const BondObject<K>& c = t.target;
  BondObject<K> omega = cone(t);
  detail::BlockBuilder<K> bb(c.dims, omega.dims);
  for (const auto& [x, n] : c.dims)
    bb.paste(x, x, 0, b.dim(shifted(x, 1)), Mat<K>::identity(n));
  return BondMorphism<K>{c, std::move(omega), bb.take()};
}

/// pi_[[B]]: Omega_T -> [[B]], the identity rows out of the [[B]]-part.
template <Scalar K>
BondMorphism<K> projection(const BondMorphism<K>& t) {
  const BondObject<K>& b = t.source;
  BondObject<K> omega = cone(t);
  BondObject<K> sb = shift_object(b);
  detail::BlockBuilder<K> bb(omega.dims, sb.dims);
  for (const auto& [x, n] : sb.dims) bb.paste(x, x, 0, 0, Mat<K>::identity(n));
  return BondMorphism<K>{std::move(omega), std::move(sb), bb.take()};
}

/// B -> C -> Omega_T -> [[B]], the K-standard triangle of T.
template <Scalar K>
Triangle<K> standard_triangle(const BondMorphism<K>& t) {
  return Triangle<K>{t.source, t.target, cone(t), t, inclusion(t), projection(t)};
}

/// Everything the rotation proof needs: R: [[B]] -> Omega_{iota_C},
/// S: Omega_{iota_C} -> [[B]], the commutativity witness for
/// pi_[[C]] + S[[T]] = Omega L + L [[C]], and the witness for Id - SR.
template <Scalar K>
struct RotationData {
  BondMorphism<K> R, S;
  KMatrix<K> L_comm, L_inv;
};

template <Scalar K>
RotationData<K> rotation_witnesses(const BondMorphism<K>& t) {
  const BondObject<K>& b = t.source;
  const BondObject<K>& c = t.target;
  BondMorphism<K> iota_c = inclusion(t);
  BondObject<K> omega2 = cone(iota_c);  // bands split (c-up, b-up, c)
  BondObject<K> sb = shift_object(b);
  BondObject<K> sc = shift_object(c);

  auto cup = [&](const GradedElement& x) { return c.dim(shifted(x, 1)); };
  auto bup = [&](const GradedElement& x) { return b.dim(shifted(x, 1)); };

  detail::BlockBuilder<K> rbb(sb.dims, omega2.dims);
  for (const auto& [key, m] : t.blocks)
    rbb.paste(shifted(key.first, -1), shifted(key.second, -1), 0, 0, -m);
  for (const auto& [x, n] : sb.dims) rbb.paste(x, x, 0, cup(x), Mat<K>::identity(n));
  BondMorphism<K> r{sb, omega2, rbb.take()};

  detail::BlockBuilder<K> sbb(omega2.dims, sb.dims);
  for (const auto& [x, n] : sb.dims) sbb.paste(x, x, cup(x), 0, Mat<K>::identity(n));
  BondMorphism<K> s{omega2, sb, sbb.take()};

  // L_comm: single Id_C piece in the bottom band at (x, x down one degree).
  detail::BlockBuilder<K> lc(omega2.dims, sc.dims);
  for (const auto& [x, n] : c.dims)
    lc.paste(x, shifted(x, -1), cup(x) + bup(x), 0, Mat<K>::identity(n));
  KMatrix<K> l_comm{WitnessVariant::K, omega2, sc, lc.take()};

  // L_inv: Id_C from the bottom band into the c-up band, one degree down.
  detail::BlockBuilder<K> li(omega2.dims, omega2.dims);
  for (const auto& [x, n] : c.dims)
    li.paste(x, shifted(x, -1), cup(x) + bup(x), 0, Mat<K>::identity(n));
  KMatrix<K> l_inv{WitnessVariant::K, omega2, omega2, li.take()};

  return RotationData<K>{std::move(r), std::move(s), std::move(l_comm), std::move(l_inv)};
}

/// TR3 fill-in. The witness must satisfy T G - F T2 = B L + L C' exactly
/// (the orientation that makes [[F, L], [0, G]] intertwine); the fill-in is
/// then the paper's 2x2 block morphism between the cones.
template <Scalar K>
BondMorphism<K> tr3_fill(const BondMorphism<K>& t, const BondMorphism<K>& t2,
                         const BondMorphism<K>& f, const BondMorphism<K>& g,
                         const KMatrix<K>& l) {
  if (!(f.source == t.source) || !(f.target == t2.source) || !(g.source == t.target) ||
      !(g.target == t2.target))
    throw ComposeMismatch("tr3_fill: square endpoints do not line up");
  BlockMap<K> want = block_sub(compose(t, g).blocks, compose(f, t2).blocks);
  BlockMap<K> got = block_add(block_mul(t.source.blocks, l.blocks),
                              block_mul(l.blocks, t2.target.blocks));
  if (!block_eq(want, got))
    throw WitnessInvalid("tr3_fill: L does not satisfy TG - FT2 = BL + LC'");

  BondObject<K> omega_t = cone(t);
  BondObject<K> omega_t2 = cone(t2);
  const BondObject<K>& bp = t2.source;
  detail::BlockBuilder<K> hb(omega_t.dims, omega_t2.dims);
  for (const auto& [key, m] : f.blocks)
    hb.paste(shifted(key.first, -1), shifted(key.second, -1), 0, 0, m);
  for (const auto& [key, m] : l.blocks)
    hb.paste(shifted(key.first, -1), key.second, 0, bp.dim(shifted(key.second, 1)), m);
  for (const auto& [key, m] : g.blocks)
    hb.paste(key.first, key.second, t.source.dim(shifted(key.first, 1)),
             bp.dim(shifted(key.second, 1)), m);
  return BondMorphism<K>{std::move(omega_t), std::move(omega_t2), hb.take()};
}

/// The octahedron data for composable S: B -> C, T: C -> D. F, G, Lambda are
/// the paper's explicit morphisms; L_rot certifies iota_{Omega_ST} = G Lambda
/// in the quotient, and the Lambda square commutes exactly (zero witness).
template <Scalar K>
struct OctahedronData {
  BondMorphism<K> F, G, Lambda;
  KMatrix<K> L_rot, L_comm;
};

template <Scalar K>
OctahedronData<K> octahedron(const BondMorphism<K>& s, const BondMorphism<K>& t) {
  if (!(s.target == t.source)) throw ComposeMismatch("octahedron: S and T are not composable");
  const BondObject<K>& b = s.source;
  const BondObject<K>& c = s.target;
  const BondObject<K>& d = t.target;
  BondMorphism<K> st = compose(s, t);
  BondObject<K> omega_s = cone(s);    // bands (b-up, c)
  BondObject<K> omega_st = cone(st);  // bands (b-up, d)
  BondObject<K> omega_t = cone(t);    // bands (c-up, d)

  auto bup = [&](const GradedElement& x) { return b.dim(shifted(x, 1)); };
  auto cup = [&](const GradedElement& x) { return c.dim(shifted(x, 1)); };

  detail::BlockBuilder<K> fb(omega_s.dims, omega_st.dims);
  for (const auto& [x, n] : b.dims) fb.paste(shifted(x, -1), shifted(x, -1), 0, 0, Mat<K>::identity(n));
  for (const auto& [key, m] : t.blocks)
    fb.paste(key.first, key.second, bup(key.first), bup(key.second), m);
  BondMorphism<K> f{omega_s, omega_st, fb.take()};

  detail::BlockBuilder<K> gb(omega_st.dims, omega_t.dims);
  for (const auto& [key, m] : s.blocks)
    gb.paste(shifted(key.first, -1), shifted(key.second, -1), 0, 0, m);
  for (const auto& [x, n] : d.dims) gb.paste(x, x, bup(x), cup(x), Mat<K>::identity(n));
  BondMorphism<K> g{omega_st, omega_t, gb.take()};

  // Omega_F bands at x: (b up-up, c-up | b-up, d)
  BondObject<K> omega_f = cone(f);
  auto bupup = [&](const GradedElement& x) { return b.dim(shifted(x, 2)); };
  detail::BlockBuilder<K> lb(omega_t.dims, omega_f.dims);
  for (const auto& [x, n] : c.dims) {
    GradedElement xd = shifted(x, -1);
    lb.paste(xd, xd, 0, bupup(xd), Mat<K>::identity(n));
  }
  for (const auto& [x, n] : d.dims)
    lb.paste(x, x, cup(x), bupup(x) + cup(x) + bup(x), Mat<K>::identity(n));
  BondMorphism<K> lambda{omega_t, omega_f, lb.take()};

  detail::BlockBuilder<K> lrot(omega_st.dims, omega_f.dims);
  for (const auto& [x, n] : b.dims) {
    GradedElement xd = shifted(x, -1);  // row element with b-up band = n
    lrot.paste(xd, shifted(xd, -1), 0, 0, Mat<K>::identity(n));
  }
  KMatrix<K> l_rot{WitnessVariant::K, omega_st, omega_f, lrot.take()};
  KMatrix<K> l_comm{WitnessVariant::K, omega_t, shift_object(omega_s), {}};

  return OctahedronData<K>{std::move(f), std::move(g), std::move(lambda), std::move(l_rot),
                           std::move(l_comm)};
}

/// The explicit witness for Id on Omega_{Id_B} being ~ 0: the single
/// identity block of [[0, 0], [Id_B, 0]] one degree below the diagonal.
template <Scalar K>
KMatrix<K> identity_cone_null_witness(const BondObject<K>& b) {
  BondObject<K> omega = cone(identity(b));
  detail::BlockBuilder<K> lb(omega.dims, omega.dims);
  for (const auto& [x, n] : b.dims)
    lb.paste(x, shifted(x, -1), b.dim(shifted(x, 1)), 0, Mat<K>::identity(n));
  return KMatrix<K>{WitnessVariant::K, omega, omega, lb.take()};
}

/// [[C]] -> [[Omega_S]], the shifted cone inclusion; target bands split as
/// (b up-up, c-up). Used to state Lambda pi = pi iota exactly.
template <Scalar K>
BondMorphism<K> shifted_inclusion(const BondMorphism<K>& s) {
  const BondObject<K>& b = s.source;
  BondObject<K> sc = shift_object(s.target);
  BondObject<K> target = shift_object(cone(s));
  detail::BlockBuilder<K> bb(sc.dims, target.dims);
  for (const auto& [x, n] : sc.dims) bb.paste(x, x, 0, b.dim(shifted(x, 2)), Mat<K>::identity(n));
  return BondMorphism<K>{std::move(sc), std::move(target), bb.take()};
}

/// Shifted cone projection [[Omega_S]] -> [[[[B]]]], matching shifted_inclusion.
template <Scalar K>
BondMorphism<K> shifted_projection(const BondMorphism<K>& s) {
  BondObject<K> source = shift_object(cone(s));
  BondObject<K> target = shift_object(s.source, 2);
  detail::BlockBuilder<K> bb(source.dims, target.dims);
  for (const auto& [x, n] : target.dims) bb.paste(x, x, 0, 0, Mat<K>::identity(n));
  return BondMorphism<K>{std::move(source), std::move(target), bb.take()};
}

}  // namespace bondcat
