#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "bondcat/matrix.hpp"
#include "bondcat/poset.hpp"

namespace bondcat {

using BlockKey = std::pair<GradedElement, GradedElement>;

/// Sparse block matrix: absent key means zero block.
template <Scalar K>
using BlockMap = std::map<BlockKey, Mat<K>>;

/// Drops stored blocks that are all zero or have an empty shape.
template <Scalar K>
void drop_zero_blocks(BlockMap<K>& blocks) {
  for (auto it = blocks.begin(); it != blocks.end();) {
    if (it->second.empty_shape() || it->second.is_zero())
      it = blocks.erase(it);
    else
      ++it;
  }
}

/// Blockwise product: (AB)_x^z = sum_y A_x^y B_y^z. Shape errors surface as
/// DimensionMismatch from the underlying matrix product.
template <Scalar K>
BlockMap<K> block_mul(const BlockMap<K>& a, const BlockMap<K>& b) {
  std::map<GradedElement, std::vector<const typename BlockMap<K>::value_type*>> b_by_row;
  for (const auto& kv : b) b_by_row[kv.first.first].push_back(&kv);
  BlockMap<K> out;
  for (const auto& [ka, ma] : a) {
    auto it = b_by_row.find(ka.second);
    if (it == b_by_row.end()) continue;
    for (const auto* pb : it->second) {
      Mat<K> prod = ma * pb->second;
      BlockKey key{ka.first, pb->first.second};
      auto [slot, fresh] = out.try_emplace(key, prod);
      if (!fresh) slot->second = slot->second + prod;
    }
  }
  drop_zero_blocks(out);
  return out;
}

template <Scalar K>
BlockMap<K> block_add(const BlockMap<K>& a, const BlockMap<K>& b) {
  BlockMap<K> out = a;
  for (const auto& [k, m] : b) {
    auto [slot, fresh] = out.try_emplace(k, m);
    if (!fresh) slot->second = slot->second + m;
  }
  drop_zero_blocks(out);
  return out;
}

template <Scalar K>
BlockMap<K> block_sub(const BlockMap<K>& a, const BlockMap<K>& b) {
  BlockMap<K> out = a;
  for (const auto& [k, m] : b) {
    auto [slot, fresh] = out.try_emplace(k, -m);
    if (!fresh) slot->second = slot->second - m;
  }
  drop_zero_blocks(out);
  return out;
}

template <Scalar K>
BlockMap<K> block_neg(const BlockMap<K>& a) {
  BlockMap<K> out;
  for (const auto& [k, m] : a) out.emplace(k, -m);
  return out;
}

template <Scalar K>
BlockMap<K> block_scale(const K& c, const BlockMap<K>& a) {
  BlockMap<K> out;
  for (const auto& [k, m] : a) out.emplace(k, m.scaled(c));
  drop_zero_blocks(out);
  return out;
}

template <Scalar K>
bool block_eq(const BlockMap<K>& a, const BlockMap<K>& b) {
  BlockMap<K> na = a, nb = b;
  drop_zero_blocks(na);
  drop_zero_blocks(nb);
  return na == nb;
}

/// A Bondarenko matrix: band sizes per graded element plus the square block
/// matrix itself, stored sparsely. Valid objects satisfy the three defining
/// conditions; `validate_object` checks them, constructions preserve them.
template <Scalar K>
struct BondObject {
  PosetPtr poset;
  std::map<GradedElement, std::size_t> dims;
  BlockMap<K> blocks;

  std::size_t dim(const GradedElement& x) const {
    auto it = dims.find(x);
    return it == dims.end() ? 0 : it->second;
  }

  const Mat<K>* block(const GradedElement& r, const GradedElement& c) const {
    auto it = blocks.find({r, c});
    return it == blocks.end() ? nullptr : &it->second;
  }

  Mat<K> block_or_zero(const GradedElement& r, const GradedElement& c) const {
    const Mat<K>* m = block(r, c);
    return m ? *m : Mat<K>(dim(r), dim(c));
  }

  bool is_zero_object() const { return dims.empty(); }

  /// Drops zero-size bands and zero blocks; canonical form for equality.
  void normalize() {
    for (auto it = dims.begin(); it != dims.end();)
      it = it->second == 0 ? dims.erase(it) : std::next(it);
    drop_zero_blocks(blocks);
  }

  bool operator==(const BondObject& o) const {
    if (poset != o.poset && (!poset || !o.poset || !(*poset == *o.poset))) return false;
    return dims == o.dims && blocks == o.blocks;
  }
};

template <Scalar K>
BondObject<K> make_object(PosetPtr poset, std::map<GradedElement, std::size_t> dims,
                          BlockMap<K> blocks) {
  BondObject<K> b{std::move(poset), std::move(dims), std::move(blocks)};
  b.normalize();
  return b;
}

template <Scalar K>
BondObject<K> zero_object(PosetPtr poset) {
  return BondObject<K>{std::move(poset), {}, {}};
}

/// Checks conditions (i)-(iii): band compatibility, sigma-paired band sizes,
/// and B^2 = 0. Violations are reported with their block coordinates.
template <Scalar K>
Report validate_object(const BondObject<K>& b) {
  Report rep;
  if (!b.poset) {
    rep.fail("object has no base poset");
    return rep;
  }
  const BasePoset& p = *b.poset;
  rep.merge(validate_poset(p));
  if (!rep.ok()) return rep;

  for (const auto& [x, n] : b.dims) {
    if (x.base < 0 || x.base >= p.size()) {
      rep.fail("band at unknown base element index " + std::to_string(x.base));
      continue;
    }
    GradedElement sx = involution(p, x);
    if (n != b.dim(sx) && !(x == sx))
      rep.fail("condition (ii): sigma-paired bands " + element_str(p, x) + " and " +
               element_str(p, sx) + " have sizes " + std::to_string(n) + " vs " +
               std::to_string(b.dim(sx)));
  }

  for (const auto& [key, m] : b.blocks) {
    const auto& [r, c] = key;
    if (m.rows() != b.dim(r) || m.cols() != b.dim(c))
      rep.fail("condition (i): block at (" + element_str(p, r) + "," + element_str(p, c) +
               ") has shape " + m.shape_str() + ", bands give " + std::to_string(b.dim(r)) + "x" +
               std::to_string(b.dim(c)));
  }
  if (!rep.ok()) return rep;

  BlockMap<K> sq = block_mul(b.blocks, b.blocks);
  for (const auto& [key, m] : sq)
    rep.fail("condition (iii): B^2 != 0 at (" + element_str(p, key.first) + "," +
             element_str(p, key.second) + ")");
  return rep;
}

/// The shift autofunctor on objects, iterated k times (k may be negative):
/// bands move down k degrees and blocks pick up the sign (-1)^k.
template <Scalar K>
BondObject<K> shift_object(const BondObject<K>& b, std::int64_t k = 1) {
  BondObject<K> out;
  out.poset = b.poset;
  for (const auto& [x, n] : b.dims) out.dims.emplace(shifted(x, -k), n);
  bool negate = (k % 2) != 0;
  for (const auto& [key, m] : b.blocks)
    out.blocks.emplace(BlockKey{shifted(key.first, -k), shifted(key.second, -k)},
                       negate ? -m : m);
  return out;
}

/// Direct sum: band sizes add, blocks sit block-diagonally with the summands
/// of `a` listed first inside every band.
template <Scalar K>
BondObject<K> direct_sum(const BondObject<K>& a, const BondObject<K>& b) {
  require_same_poset(a.poset, b.poset);
  BondObject<K> out;
  out.poset = a.poset;
  for (const auto& [x, n] : a.dims) out.dims[x] += n;
  for (const auto& [x, n] : b.dims) out.dims[x] += n;
  auto place = [&](const BlockMap<K>& blocks, const BondObject<K>& owner, bool second) {
    for (const auto& [key, m] : blocks) {
      const auto& [r, c] = key;
      auto [slot, fresh] =
          out.blocks.try_emplace(key, Mat<K>(out.dims[r], out.dims[c]));
      std::size_t r0 = second ? out.dims[r] - owner.dim(r) : 0;
      std::size_t c0 = second ? out.dims[c] - owner.dim(c) : 0;
      (void)fresh;
      slot->second.paste(r0, c0, m);
    }
  };
  place(a.blocks, a, false);
  place(b.blocks, b, true);
  out.normalize();
  return out;
}

}  // namespace bondcat
