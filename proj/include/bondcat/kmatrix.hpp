#pragma once

#include <functional>
#include <optional>

#include "bondcat/linear.hpp"
#include "bondcat/morphism.hpp"

namespace bondcat {

/// K certifies S ~ T (blocks allowed up to one degree below the diagonal),
/// Kappa the stricter BCP24 relation (morphism-shaped region).
enum class WitnessVariant { K, Kappa };

inline std::string variant_name(WitnessVariant v) {
  return v == WitnessVariant::K ? "K" : "kappa";
}

/// Does the region condition (iii) / (iii') allow a nonzero block at (r, c)?
inline bool region_allows(WitnessVariant v, const GradedElement& r, const GradedElement& c) {
  if (v == WitnessVariant::K)
    return !(r.degree > c.degree + 1 || (r.degree == c.degree + 1 && r.base > c.base));
  return !(r.degree > c.degree || (r.degree == c.degree && r.base > c.base));
}

/// A certified witness for S - T = B L + L C between parallel morphisms
/// B -> C. Rows are banded by B, columns by C.
template <Scalar K>
struct KMatrix {
  WitnessVariant variant = WitnessVariant::K;
  BondObject<K> source;  // B
  BondObject<K> target;  // C
  BlockMap<K> blocks;
};

/// Checks all four defining conditions of a (kappa-)matrix witness for
/// S ~ T exactly. Throws if S, T, L do not even talk about the same Hom-set.
template <Scalar K>
Report check_witness(const BondMorphism<K>& s, const BondMorphism<K>& t, const KMatrix<K>& l) {
  if (!(s.source == t.source) || !(s.target == t.target))
    throw ComposeMismatch("check_witness: S and T are not parallel");
  if (!(l.source == s.source) || !(l.target == s.target))
    throw ComposeMismatch("check_witness: L is banded by a different pair of objects");
  const BasePoset& p = *l.source.poset;

  Report rep;
  for (const auto& [key, m] : l.blocks) {
    const auto& [r, c] = key;
    if (m.rows() != l.source.dim(r) || m.cols() != l.target.dim(c))
      rep.fail("condition (i): block at (" + element_str(p, r) + "," + element_str(p, c) +
               ") has shape " + m.shape_str());
    if (!region_allows(l.variant, r, c) && !m.is_zero())
      rep.fail("condition (iii" + std::string(l.variant == WitnessVariant::K ? "" : "'") +
               "): nonzero block outside the allowed region at (" + element_str(p, r) + "," +
               element_str(p, c) + ")");
  }
  for (const auto& [x, n] : l.source.dims) {
    (void)n;
    GradedElement sx = involution(p, x);
    if (sx == x || sx < x) continue;
    Mat<K> dx(l.source.dim(x), l.target.dim(x)), dsx(l.source.dim(sx), l.target.dim(sx));
    if (const Mat<K>* m = l.blocks.count({x, x}) ? &l.blocks.at({x, x}) : nullptr) dx = *m;
    if (const Mat<K>* m = l.blocks.count({sx, sx}) ? &l.blocks.at({sx, sx}) : nullptr) dsx = *m;
    if (dx.rows() == dsx.rows() && dx.cols() == dsx.cols()) {
      if (!(dx == dsx))
        rep.fail("condition (iv): diagonal blocks at " + element_str(p, x) + " and " +
                 element_str(p, sx) + " differ");
    }
  }
  if (!rep.ok()) return rep;

  BlockMap<K> rhs = block_add(block_mul(l.source.blocks, l.blocks),
                              block_mul(l.blocks, l.target.blocks));
  BlockMap<K> lhs = block_sub(s.blocks, t.blocks);
  if (!block_eq(lhs, rhs)) {
    BlockMap<K> d = block_sub(lhs, rhs);
    for (const auto& [key, m] : d)
      rep.fail("condition (ii): S - T != BL + LC at (" + element_str(p, key.first) + "," +
               element_str(p, key.second) + ")");
  }
  return rep;
}

namespace detail {

struct Slot {
  GradedElement row, col;
  std::size_t i = 0, j = 0;
  auto operator<=>(const Slot&) const = default;
};

/// Numbering of witness entries with sigma-diagonal aliasing baked in: the
/// paired diagonal blocks share one variable per entry, so infeasibility is
/// decided on the correctly constrained system.
class SlotPool {
 public:
  explicit SlotPool(std::function<Slot(const Slot&)> canon) : canon_(std::move(canon)) {}

  std::size_t id(const Slot& s) {
    Slot c = canon_(s);
    auto [it, fresh] = ids_.try_emplace(c, ids_.size());
    (void)fresh;
    return it->second;
  }
  std::size_t count() const { return ids_.size(); }

 private:
  std::function<Slot(const Slot&)> canon_;
  std::map<Slot, std::size_t> ids_;
};

/// Canonicalizer aliasing sigma-paired diagonal blocks.
inline std::function<Slot(const Slot&)> diagonal_canon(const BasePoset& p) {
  return [&p](const Slot& s) {
    if (s.row == s.col) {
      GradedElement sx = involution(p, s.row);
      if (sx < s.row) return Slot{sx, sx, s.i, s.j};
    }
    return s;
  };
}

}  // namespace detail

/// Decides S ~ T (variant K) or S == T in the kappa sense by exact linear
/// feasibility over the entries of L in the allowed region. Returns the
/// canonical witness (free variables zero) or nullopt.
///
/// `extra_canon` lets a caller alias more slots together (used by the
/// functor-side homotopy dictionary); it must map allowed slots to allowed
/// slots of equal shape.
template <Scalar K>
std::optional<KMatrix<K>> find_witness(
    const BondMorphism<K>& s, const BondMorphism<K>& t, WitnessVariant variant,
    const std::function<detail::Slot(const detail::Slot&)>& extra_canon = nullptr) {
  if (!(s.source == t.source) || !(s.target == t.target))
    throw ComposeMismatch("find_witness: S and T are not parallel");
  const BondObject<K>& b = s.source;
  const BondObject<K>& c = s.target;
  const BasePoset& p = *b.poset;

  auto base_canon = detail::diagonal_canon(p);
  auto canon = [&](const detail::Slot& sl) {
    detail::Slot out = extra_canon ? base_canon(extra_canon(sl)) : base_canon(sl);
    return out;
  };
  detail::SlotPool pool(canon);

  // Register every allowed slot so the witness can be materialized even when
  // all equations are vacuous.
  for (const auto& [x, nx] : b.dims)
    for (const auto& [y, ny] : c.dims) {
      if (!region_allows(variant, x, y)) continue;
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) pool.id({x, y, i, j});
    }

  // Index C's blocks by column for the L*C terms.
  std::map<GradedElement, std::vector<const typename BlockMap<K>::value_type*>> c_by_col;
  for (const auto& kv : c.blocks) c_by_col[kv.first.second].push_back(&kv);
  std::map<GradedElement, std::vector<const typename BlockMap<K>::value_type*>> b_by_row;
  for (const auto& kv : b.blocks) b_by_row[kv.first.first].push_back(&kv);

  BlockMap<K> want = block_sub(s.blocks, t.blocks);

  LinearSystem<K> sys(pool.count());
  for (const auto& [x, nx] : b.dims)
    for (const auto& [z, nz] : c.dims) {
      Mat<K> rhs(nx, nz);
      if (auto it = want.find({x, z}); it != want.end()) rhs = it->second;
      // terms per entry (i, j)
      std::vector<std::vector<std::pair<std::size_t, K>>> terms(nx * nz);
      if (auto it = b_by_row.find(x); it != b_by_row.end())
        for (const auto* pb : it->second) {
          const GradedElement& y = pb->first.second;
          if (!region_allows(variant, y, z)) continue;
          const Mat<K>& m = pb->second;
          for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t k = 0; k < m.cols(); ++k) {
              if (is_zero(m.at(i, k))) continue;
              for (std::size_t j = 0; j < nz; ++j)
                terms[i * nz + j].emplace_back(pool.id({y, z, k, j}), m.at(i, k));
            }
        }
      if (auto it = c_by_col.find(z); it != c_by_col.end())
        for (const auto* pc : it->second) {
          const GradedElement& y = pc->first.first;
          if (!region_allows(variant, x, y)) continue;
          const Mat<K>& m = pc->second;
          for (std::size_t k = 0; k < m.rows(); ++k)
            for (std::size_t j = 0; j < nz; ++j) {
              if (is_zero(m.at(k, j))) continue;
              for (std::size_t i = 0; i < nx; ++i)
                terms[i * nz + j].emplace_back(pool.id({x, y, i, k}), m.at(k, j));
            }
        }
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nz; ++j) {
          if (terms[i * nz + j].empty() && is_zero(rhs.at(i, j))) continue;
          sys.add_equation(std::move(terms[i * nz + j]), rhs.at(i, j));
        }
    }

  auto sol = sys.solve();
  if (!sol) return std::nullopt;

  KMatrix<K> l{variant, b, c, {}};
  for (const auto& [x, nx] : b.dims)
    for (const auto& [y, ny] : c.dims) {
      if (!region_allows(variant, x, y)) continue;
      Mat<K> m(nx, ny);
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) m.at(i, j) = (*sol)[pool.id({x, y, i, j})];
      if (!m.is_zero()) l.blocks.emplace(BlockKey{x, y}, std::move(m));
    }
  return l;
}

/// Certified two-sided quotient inverse: U with T U ~ Id_B and U T ~ Id_C,
/// found by one joint affine solve over the entries of (U, L1, L2). U is
/// constrained to the morphism conditions, which are all linear.
template <Scalar K>
struct IsoCertificate {
  BondMorphism<K> inverse;  // U: C -> B
  KMatrix<K> l1;            // T U - Id_B = B L1 + L1 B
  KMatrix<K> l2;            // U T - Id_C = C L2 + L2 C
};

template <Scalar K>
std::optional<IsoCertificate<K>> is_iso_in_quotient(const BondMorphism<K>& t) {
  const BondObject<K>& b = t.source;
  const BondObject<K>& c = t.target;
  const BasePoset& p = *b.poset;

  // Variable layout: three block families, disambiguated by a tag element
  // glued into the degree coordinate is too cute; use an id offset scheme.
  auto base_canon = detail::diagonal_canon(p);
  detail::SlotPool upool(base_canon), l1pool(base_canon), l2pool(base_canon);

  auto u_allowed = [&](const GradedElement& x, const GradedElement& y) { return !(x > y); };

  for (const auto& [x, nx] : c.dims)
    for (const auto& [y, ny] : b.dims) {
      if (!u_allowed(x, y)) continue;
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) upool.id({x, y, i, j});
    }
  for (const auto& [x, nx] : b.dims)
    for (const auto& [y, ny] : b.dims) {
      if (!region_allows(WitnessVariant::K, x, y)) continue;
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) l1pool.id({x, y, i, j});
    }
  for (const auto& [x, nx] : c.dims)
    for (const auto& [y, ny] : c.dims) {
      if (!region_allows(WitnessVariant::K, x, y)) continue;
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) l2pool.id({x, y, i, j});
    }
  const std::size_t n_u = upool.count(), n_l1 = l1pool.count(), n_l2 = l2pool.count();
  auto uid = [&](detail::Slot s) { return upool.id(s); };
  auto l1id = [&](detail::Slot s) { return n_u + l1pool.id(s); };
  auto l2id = [&](detail::Slot s) { return n_u + n_l1 + l2pool.id(s); };

  LinearSystem<K> sys(n_u + n_l1 + n_l2);

  std::map<GradedElement, std::vector<const typename BlockMap<K>::value_type*>> b_by_row,
      c_by_row, b_by_col, c_by_col, t_by_row, t_by_col;
  for (const auto& kv : b.blocks) {
    b_by_row[kv.first.first].push_back(&kv);
    b_by_col[kv.first.second].push_back(&kv);
  }
  for (const auto& kv : c.blocks) {
    c_by_row[kv.first.first].push_back(&kv);
    c_by_col[kv.first.second].push_back(&kv);
  }
  for (const auto& kv : t.blocks) {
    t_by_row[kv.first.first].push_back(&kv);
    t_by_col[kv.first.second].push_back(&kv);
  }

  // (1) intertwining: (U B)_x^z - (C U)_x^z = 0 for x in supp C, z in supp B.
  for (const auto& [x, nx] : c.dims)
    for (const auto& [z, nz] : b.dims) {
      std::vector<std::vector<std::pair<std::size_t, K>>> terms(nx * nz);
      if (auto it = b_by_col.find(z); it != b_by_col.end())
        for (const auto* pb : it->second) {
          const GradedElement& y = pb->first.first;
          if (!u_allowed(x, y)) continue;
          const Mat<K>& m = pb->second;  // B_y^z
          for (std::size_t k = 0; k < m.rows(); ++k)
            for (std::size_t j = 0; j < nz; ++j) {
              if (is_zero(m.at(k, j))) continue;
              for (std::size_t i = 0; i < nx; ++i)
                terms[i * nz + j].emplace_back(uid({x, y, i, k}), m.at(k, j));
            }
        }
      if (auto it = c_by_row.find(x); it != c_by_row.end())
        for (const auto* pc : it->second) {
          const GradedElement& y = pc->first.second;
          if (!u_allowed(y, z)) continue;
          const Mat<K>& m = pc->second;  // C_x^y
          for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t k = 0; k < m.cols(); ++k) {
              if (is_zero(m.at(i, k))) continue;
              for (std::size_t j = 0; j < nz; ++j)
                terms[i * nz + j].emplace_back(uid({y, z, k, j}), -m.at(i, k));
            }
        }
      for (std::size_t e = 0; e < terms.size(); ++e)
        if (!terms[e].empty()) sys.add_equation(std::move(terms[e]), K(0));
    }

  // (2) (T U)_x^z - (B L1 + L1 B)_x^z = Id_B block entries, x, z in supp B.
  for (const auto& [x, nx] : b.dims)
    for (const auto& [z, nz] : b.dims) {
      std::vector<std::vector<std::pair<std::size_t, K>>> terms(nx * nz);
      if (auto it = t_by_row.find(x); it != t_by_row.end())
        for (const auto* pt : it->second) {
          const GradedElement& y = pt->first.second;
          if (!u_allowed(y, z)) continue;
          const Mat<K>& m = pt->second;  // T_x^y
          for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t k = 0; k < m.cols(); ++k) {
              if (is_zero(m.at(i, k))) continue;
              for (std::size_t j = 0; j < nz; ++j)
                terms[i * nz + j].emplace_back(uid({y, z, k, j}), m.at(i, k));
            }
        }
      if (auto it = b_by_row.find(x); it != b_by_row.end())
        for (const auto* pb : it->second) {
          const GradedElement& y = pb->first.second;
          if (!region_allows(WitnessVariant::K, y, z)) continue;
          const Mat<K>& m = pb->second;  // B_x^y
          for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t k = 0; k < m.cols(); ++k) {
              if (is_zero(m.at(i, k))) continue;
              for (std::size_t j = 0; j < nz; ++j)
                terms[i * nz + j].emplace_back(l1id({y, z, k, j}), -m.at(i, k));
            }
        }
      if (auto it = b_by_col.find(z); it != b_by_col.end())
        for (const auto* pb : it->second) {
          const GradedElement& y = pb->first.first;
          if (!region_allows(WitnessVariant::K, x, y)) continue;
          const Mat<K>& m = pb->second;  // B_y^z
          for (std::size_t k = 0; k < m.rows(); ++k)
            for (std::size_t j = 0; j < nz; ++j) {
              if (is_zero(m.at(k, j))) continue;
              for (std::size_t i = 0; i < nx; ++i)
                terms[i * nz + j].emplace_back(l1id({x, y, i, k}), -m.at(k, j));
            }
        }
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nz; ++j) {
          K rhs = (x == z && i == j) ? K(1) : K(0);
          if (terms[i * nz + j].empty() && is_zero(rhs)) continue;
          sys.add_equation(std::move(terms[i * nz + j]), rhs);
        }
    }

  // (3) (U T)_x^z - (C L2 + L2 C)_x^z = Id_C block entries, x, z in supp C.
  for (const auto& [x, nx] : c.dims)
    for (const auto& [z, nz] : c.dims) {
      std::vector<std::vector<std::pair<std::size_t, K>>> terms(nx * nz);
      if (auto it = t_by_col.find(z); it != t_by_col.end())
        for (const auto* pt : it->second) {
          const GradedElement& y = pt->first.first;
          if (!u_allowed(x, y)) continue;
          const Mat<K>& m = pt->second;  // T_y^z
          for (std::size_t k = 0; k < m.rows(); ++k)
            for (std::size_t j = 0; j < nz; ++j) {
              if (is_zero(m.at(k, j))) continue;
              for (std::size_t i = 0; i < nx; ++i)
                terms[i * nz + j].emplace_back(uid({x, y, i, k}), m.at(k, j));
            }
        }
      if (auto it = c_by_row.find(x); it != c_by_row.end())
        for (const auto* pc : it->second) {
          const GradedElement& y = pc->first.second;
          if (!region_allows(WitnessVariant::K, y, z)) continue;
          const Mat<K>& m = pc->second;
          for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t k = 0; k < m.cols(); ++k) {
              if (is_zero(m.at(i, k))) continue;
              for (std::size_t j = 0; j < nz; ++j)
                terms[i * nz + j].emplace_back(l2id({y, z, k, j}), -m.at(i, k));
            }
        }
      if (auto jt = c_by_col.find(z); jt != c_by_col.end())
        for (const auto* pc : jt->second) {
          const GradedElement& y = pc->first.first;
          if (!region_allows(WitnessVariant::K, x, y)) continue;
          const Mat<K>& m = pc->second;
          for (std::size_t k = 0; k < m.rows(); ++k)
            for (std::size_t j = 0; j < nz; ++j) {
              if (is_zero(m.at(k, j))) continue;
              for (std::size_t i = 0; i < nx; ++i)
                terms[i * nz + j].emplace_back(l2id({x, y, i, k}), -m.at(k, j));
            }
        }
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nz; ++j) {
          K rhs = (x == z && i == j) ? K(1) : K(0);
          if (terms[i * nz + j].empty() && is_zero(rhs)) continue;
          sys.add_equation(std::move(terms[i * nz + j]), rhs);
        }
    }

  auto sol = sys.solve();
  if (!sol) return std::nullopt;

  auto materialize = [&](auto& id_of, const BondObject<K>& rows, const BondObject<K>& cols,
                         auto allowed) {
    BlockMap<K> blocks;
    for (const auto& [x, nx] : rows.dims)
      for (const auto& [y, ny] : cols.dims) {
        if (!allowed(x, y)) continue;
        Mat<K> m(nx, ny);
        for (std::size_t i = 0; i < nx; ++i)
          for (std::size_t j = 0; j < ny; ++j) m.at(i, j) = (*sol)[id_of({x, y, i, j})];
        if (!m.is_zero()) blocks.emplace(BlockKey{x, y}, std::move(m));
      }
    return blocks;
  };
  auto kreg = [](const GradedElement& x, const GradedElement& y) {
    return region_allows(WitnessVariant::K, x, y);
  };
  IsoCertificate<K> cert{
      BondMorphism<K>{c, b, materialize(uid, c, b, u_allowed)},
      KMatrix<K>{WitnessVariant::K, b, b, materialize(l1id, b, b, kreg)},
      KMatrix<K>{WitnessVariant::K, c, c, materialize(l2id, c, c, kreg)}};
  return cert;
}

/// Lemma "ideal", right multiplication: F ~ 0 with witness L, G composable;
/// the witness for F G ~ 0 is the blockwise product L G.
template <Scalar K>
KMatrix<K> ideal_right_witness(const BondMorphism<K>& f, const KMatrix<K>& l,
                               const BondMorphism<K>& g) {
  Report ok = check_witness(f, zero_morphism(f.source, f.target), l);
  if (!ok.ok()) throw WitnessInvalid("ideal_right_witness: L does not certify F ~ 0:\n" + ok.str());
  if (!(g.source == f.target)) throw ComposeMismatch("ideal_right_witness: F, G not composable");
  return KMatrix<K>{l.variant, f.source, g.target, block_mul(l.blocks, g.blocks)};
}

/// Lemma "ideal", left multiplication: the witness for H F ~ 0 is H L.
template <Scalar K>
KMatrix<K> ideal_left_witness(const BondMorphism<K>& h, const BondMorphism<K>& f,
                              const KMatrix<K>& l) {
  Report ok = check_witness(f, zero_morphism(f.source, f.target), l);
  if (!ok.ok()) throw WitnessInvalid("ideal_left_witness: L does not certify F ~ 0:\n" + ok.str());
  if (!(h.target == f.source)) throw ComposeMismatch("ideal_left_witness: H, F not composable");
  return KMatrix<K>{l.variant, h.source, f.target, block_mul(h.blocks, l.blocks)};
}

}  // namespace bondcat
