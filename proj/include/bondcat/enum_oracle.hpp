#pragma once

// Brute-force GF(2) oracle for the witness solver: enumerate every
// assignment of the allowed region and check S - T = B L + L C by flattening
// the block structure into plain dense arrays. Deliberately shares no
// system-assembly code with the solver; it exists to check the solver, so it
// must never be implemented in terms of it.

#include <cstdint>

#include "bondcat/kmatrix.hpp"

namespace bondcat::oracle {

struct Flat {
  std::map<GradedElement, std::size_t> offset;
  std::size_t total = 0;
};

inline Flat layout(const std::map<GradedElement, std::size_t>& dims) {
  Flat f;
  for (const auto& [x, n] : dims) {
    f.offset[x] = f.total;
    f.total += n;
  }
  return f;
}

inline std::vector<std::vector<int>> flatten(const BlockMap<Gf>& blocks, const Flat& rows,
                                             const Flat& cols) {
  std::vector<std::vector<int>> m(rows.total, std::vector<int>(cols.total, 0));
  for (const auto& [key, blk] : blocks) {
    std::size_t r0 = rows.offset.at(key.first), c0 = cols.offset.at(key.second);
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = 0; j < blk.cols(); ++j)
        m[r0 + i][c0 + j] = static_cast<int>(blk.at(i, j).value());
  }
  return m;
}

/// Slots of the allowed region with sigma-paired diagonals listed once; each
/// slot owns the flat coordinates it writes to (one or two).
struct EnumSlot {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
};

/// Exhaustive decision of S ~ T over GF(2). Returns nullopt when the region
/// has more than `max_unknowns` independent cells.
inline std::optional<bool> decide(const BondMorphism<Gf>& s, const BondMorphism<Gf>& t,
                                  WitnessVariant variant, std::size_t max_unknowns = 12) {
  const BondObject<Gf>& b = s.source;
  const BondObject<Gf>& c = s.target;
  const BasePoset& poset = *b.poset;
  Flat rb = layout(b.dims), rc = layout(c.dims);

  std::vector<EnumSlot> slots;
  for (const auto& [x, nx] : b.dims)
    for (const auto& [y, ny] : c.dims) {
      if (!region_allows(variant, x, y)) continue;
      if (x == y && involution(poset, x) < x) continue;  // owned by the partner
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
          EnumSlot slot;
          slot.cells.emplace_back(rb.offset.at(x) + i, rc.offset.at(y) + j);
          if (x == y) {
            GradedElement sx = involution(poset, x);
            if (!(sx == x)) slot.cells.emplace_back(rb.offset.at(sx) + i, rc.offset.at(sx) + j);
          }
          slots.push_back(std::move(slot));
        }
    }
  if (slots.size() > max_unknowns) return std::nullopt;

  auto mb = flatten(b.blocks, rb, rb);
  auto mc = flatten(c.blocks, rc, rc);
  auto want = flatten(block_sub(s.blocks, t.blocks), rb, rc);
  std::size_t nb = rb.total, nc = rc.total;

  for (std::uint64_t bits = 0; bits < (1ull << slots.size()); ++bits) {
    std::vector<std::vector<int>> l(nb, std::vector<int>(nc, 0));
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (bits & (1ull << k))
        for (const auto& [i, j] : slots[k].cells) l[i][j] = 1;
    bool good = true;
    for (std::size_t i = 0; i < nb && good; ++i)
      for (std::size_t j = 0; j < nc && good; ++j) {
        int acc = 0;
        for (std::size_t k = 0; k < nb; ++k) acc ^= mb[i][k] & l[k][j];
        for (std::size_t k = 0; k < nc; ++k) acc ^= l[i][k] & mc[k][j];
        if (acc != (want[i][j] & 1)) good = false;
      }
    if (good) return true;
  }
  return false;
}

}  // namespace bondcat::oracle
