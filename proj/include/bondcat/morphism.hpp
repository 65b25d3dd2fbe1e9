#pragma once

#include "bondcat/object.hpp"

namespace bondcat {

/// A morphism T: source -> target in s(Y x Z, k). Conditions (a)-(d):
/// band-compatible shapes, T C = B T, zero strictly below the diagonal,
/// and equal diagonal blocks at sigma-paired elements.
template <Scalar K>
struct BondMorphism {
  BondObject<K> source;
  BondObject<K> target;
  BlockMap<K> blocks;

  const Mat<K>* block(const GradedElement& r, const GradedElement& c) const {
    auto it = blocks.find({r, c});
    return it == blocks.end() ? nullptr : &it->second;
  }
  Mat<K> block_or_zero(const GradedElement& r, const GradedElement& c) const {
    const Mat<K>* m = block(r, c);
    return m ? *m : Mat<K>(source.dim(r), target.dim(c));
  }

  bool operator==(const BondMorphism& o) const {
    return source == o.source && target == o.target && blocks == o.blocks;
  }
};

template <Scalar K>
BondMorphism<K> make_morphism(BondObject<K> source, BondObject<K> target, BlockMap<K> blocks) {
  require_same_poset(source.poset, target.poset);
  drop_zero_blocks(blocks);
  return BondMorphism<K>{std::move(source), std::move(target), std::move(blocks)};
}

template <Scalar K>
BondMorphism<K> zero_morphism(BondObject<K> source, BondObject<K> target) {
  return make_morphism(std::move(source), std::move(target), BlockMap<K>{});
}

template <Scalar K>
BondMorphism<K> identity(const BondObject<K>& b) {
  BlockMap<K> blocks;
  for (const auto& [x, n] : b.dims) blocks.emplace(BlockKey{x, x}, Mat<K>::identity(n));
  return BondMorphism<K>{b, b, std::move(blocks)};
}

/// Checks conditions (a)-(d) against the stated endpoints. The endpoints are
/// assumed valid objects (validate_object them first if in doubt).
template <Scalar K>
Report validate_morphism(const BondMorphism<K>& t) {
  Report rep;
  if (!t.source.poset || !t.target.poset) {
    rep.fail("morphism endpoint has no base poset");
    return rep;
  }
  if (!(t.source.poset == t.target.poset || *t.source.poset == *t.target.poset)) {
    rep.fail("source and target live over different posets");
    return rep;
  }
  const BasePoset& p = *t.source.poset;
  for (const auto& [key, m] : t.blocks) {
    const auto& [r, c] = key;
    if (m.rows() != t.source.dim(r) || m.cols() != t.target.dim(c))
      rep.fail("condition (a): block at (" + element_str(p, r) + "," + element_str(p, c) +
               ") has shape " + m.shape_str() + ", bands give " +
               std::to_string(t.source.dim(r)) + "x" + std::to_string(t.target.dim(c)));
    if (r > c && !m.is_zero())
      rep.fail("condition (c): nonzero block below the diagonal at (" + element_str(p, r) + "," +
               element_str(p, c) + ")");
  }
  if (!rep.ok()) return rep;

  BlockMap<K> lhs = block_mul(t.blocks, t.target.blocks);
  BlockMap<K> rhs = block_mul(t.source.blocks, t.blocks);
  if (!block_eq(lhs, rhs)) {
    BlockMap<K> d = block_sub(lhs, rhs);
    for (const auto& [key, m] : d)
      rep.fail("condition (b): TC != BT at (" + element_str(p, key.first) + "," +
               element_str(p, key.second) + ")");
  }

  for (const auto& [x, n] : t.source.dims) {
    (void)n;
    GradedElement sx = involution(p, x);
    if (sx == x || sx < x) continue;  // each pair once, (d) vacuous on fixed points
    Mat<K> dx = t.block_or_zero(x, x);
    Mat<K> dsx = t.block_or_zero(sx, sx);
    if (dx.rows() == dsx.rows() && dx.cols() == dsx.cols()) {
      if (!(dx == dsx))
        rep.fail("condition (d): diagonal blocks at " + element_str(p, x) + " and " +
                 element_str(p, sx) + " differ");
    } else {
      rep.fail("condition (d): diagonal blocks at " + element_str(p, x) + " and " +
               element_str(p, sx) + " have different shapes");
    }
  }
  return rep;
}

/// Diagrammatic composition: (f g) means f first, then g.
template <Scalar K>
BondMorphism<K> compose(const BondMorphism<K>& f, const BondMorphism<K>& g) {
  if (!(f.target == g.source))
    throw ComposeMismatch("compose: f.target != g.source");
  return BondMorphism<K>{f.source, g.target, block_mul(f.blocks, g.blocks)};
}

template <Scalar K>
BondMorphism<K> add(const BondMorphism<K>& f, const BondMorphism<K>& g) {
  if (!(f.source == g.source) || !(f.target == g.target))
    throw ComposeMismatch("add: morphisms are not parallel");
  return BondMorphism<K>{f.source, f.target, block_add(f.blocks, g.blocks)};
}

template <Scalar K>
BondMorphism<K> sub(const BondMorphism<K>& f, const BondMorphism<K>& g) {
  if (!(f.source == g.source) || !(f.target == g.target))
    throw ComposeMismatch("sub: morphisms are not parallel");
  return BondMorphism<K>{f.source, f.target, block_sub(f.blocks, g.blocks)};
}

template <Scalar K>
BondMorphism<K> scale(const K& c, const BondMorphism<K>& f) {
  return BondMorphism<K>{f.source, f.target, block_scale(c, f.blocks)};
}

/// Shift on morphisms: pure reindexing, no sign.
template <Scalar K>
BondMorphism<K> shift_morphism(const BondMorphism<K>& t, std::int64_t k = 1) {
  BlockMap<K> blocks;
  for (const auto& [key, m] : t.blocks)
    blocks.emplace(BlockKey{shifted(key.first, -k), shifted(key.second, -k)}, m);
  return BondMorphism<K>{shift_object(t.source, k), shift_object(t.target, k),
                         std::move(blocks)};
}

/// Canonical injection of one summand into a (+) b (which = 0 or 1).
template <Scalar K>
BondMorphism<K> sum_injection(const BondObject<K>& a, const BondObject<K>& b, int which) {
  BondObject<K> sum = direct_sum(a, b);
  const BondObject<K>& part = which == 0 ? a : b;
  BlockMap<K> blocks;
  for (const auto& [x, n] : part.dims) {
    Mat<K> m(n, sum.dim(x));
    std::size_t off = which == 0 ? 0 : a.dim(x);
    for (std::size_t i = 0; i < n; ++i) m.at(i, off + i) = K(1);
    blocks.emplace(BlockKey{x, x}, std::move(m));
  }
  return BondMorphism<K>{part, std::move(sum), std::move(blocks)};
}

/// Canonical projection of a (+) b onto one summand.
template <Scalar K>
BondMorphism<K> sum_projection(const BondObject<K>& a, const BondObject<K>& b, int which) {
  BondObject<K> sum = direct_sum(a, b);
  const BondObject<K>& part = which == 0 ? a : b;
  BlockMap<K> blocks;
  for (const auto& [x, n] : part.dims) {
    Mat<K> m(sum.dim(x), n);
    std::size_t off = which == 0 ? 0 : a.dim(x);
    for (std::size_t i = 0; i < n; ++i) m.at(off + i, i) = K(1);
    blocks.emplace(BlockKey{x, x}, std::move(m));
  }
  return BondMorphism<K>{std::move(sum), part, std::move(blocks)};
}

/// Block-diagonal sum of morphisms, matching direct_sum on objects.
template <Scalar K>
BondMorphism<K> direct_sum(const BondMorphism<K>& f, const BondMorphism<K>& g) {
  BondObject<K> src = direct_sum(f.source, g.source);
  BondObject<K> dst = direct_sum(f.target, g.target);
  BlockMap<K> blocks;
  auto place = [&](const BondMorphism<K>& h, bool second) {
    for (const auto& [key, m] : h.blocks) {
      const auto& [r, c] = key;
      auto [slot, fresh] = blocks.try_emplace(key, Mat<K>(src.dim(r), dst.dim(c)));
      (void)fresh;
      std::size_t r0 = second ? src.dim(r) - h.source.dim(r) : 0;
      std::size_t c0 = second ? dst.dim(c) - h.target.dim(c) : 0;
      slot->second.paste(r0, c0, m);
    }
  };
  place(f, false);
  place(g, true);
  drop_zero_blocks(blocks);
  return BondMorphism<K>{std::move(src), std::move(dst), std::move(blocks)};
}

}  // namespace bondcat
