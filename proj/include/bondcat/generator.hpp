#pragma once

#include <random>

#include "bondcat/cones.hpp"
#include "bondcat/functor.hpp"

namespace bondcat {

/// Seeded random instances for the property suites. Objects come out of the
/// cone-closure of stalk objects, morphisms and chain maps are sampled from
/// the exact solution space of their defining linear conditions, so every
/// emitted instance is valid by construction.
///
/// All randomness goes through the raw engine (no distribution objects), so
/// runs are reproducible across standard libraries.
template <Scalar K>
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t uniform(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }
  bool coin() { return uniform(2) == 1; }

  K scalar() { return K(static_cast<long long>(uniform(scalar_range()))); }
  K nonzero_scalar() {
    return K(static_cast<long long>(1 + uniform(scalar_range() - 1)));
  }

  PosetPtr poset(int max_elems = 3) {
    int n = 1 + static_cast<int>(uniform(static_cast<std::uint64_t>(max_elems)));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = i;
    // pair up a random matching
    std::vector<int> free;
    for (int i = 0; i < n; ++i) free.push_back(i);
    while (free.size() >= 2 && coin()) {
      std::size_t a = uniform(free.size());
      int ea = free[a];
      free.erase(free.begin() + static_cast<std::ptrdiff_t>(a));
      std::size_t b = uniform(free.size());
      int eb = free[b];
      free.erase(free.begin() + static_cast<std::ptrdiff_t>(b));
      sigma[static_cast<std::size_t>(ea)] = eb;
      sigma[static_cast<std::size_t>(eb)] = ea;
    }
    return make_poset(std::move(names), std::move(sigma));
  }

  /// Stalk object: sigma-closed bands in a couple of degrees, no blocks.
  BondObject<K> stalk(const PosetPtr& p, int max_dim = 2) {
    const BasePoset& bp = *p;
    BondObject<K> b;
    b.poset = p;
    int bands = 1 + static_cast<int>(uniform(2));
    for (int k = 0; k < bands; ++k) {
      GradedElement x{static_cast<int>(uniform(static_cast<std::uint64_t>(bp.size()))),
                      static_cast<std::int64_t>(uniform(3)) - 1};
      std::size_t n = 1 + uniform(static_cast<std::uint64_t>(max_dim));
      b.dims[x] = n;
      b.dims[involution(bp, x)] = n;
    }
    return b;
  }

  /// Random valid object: iterate cones of random morphisms between members
  /// of a growing pool, starting from stalks.
  BondObject<K> object(const PosetPtr& p, int depth = 2) {
    BondObject<K> cur = stalk(p);
    for (int it = 0; it < depth; ++it) {
      BondObject<K> other = stalk(p);
      BondMorphism<K> t = coin() ? morphism(cur, other) : morphism(other, cur);
      cur = cone(t);
    }
    return cur;
  }

  /// Uniform sample from Hom(B, C): conditions (a)-(d) are linear, so the
  /// Hom-space is the solution space of a homogeneous system; echelon
  /// parametrization + uniform free variables = uniform morphism.
  BondMorphism<K> morphism(const BondObject<K>& b, const BondObject<K>& c) {
    require_same_poset(b.poset, c.poset);
    const BasePoset& p = *b.poset;
    auto canon = detail::diagonal_canon(p);
    detail::SlotPool pool(canon);
    auto allowed = [](const GradedElement& x, const GradedElement& y) { return !(x > y); };
    for (const auto& [x, nx] : b.dims)
      for (const auto& [y, ny] : c.dims) {
        if (!allowed(x, y)) continue;
        for (std::size_t i = 0; i < nx; ++i)
          for (std::size_t j = 0; j < ny; ++j) pool.id({x, y, i, j});
      }
    std::map<GradedElement, std::vector<const typename BlockMap<K>::value_type*>> b_by_row,
        c_by_col;
    for (const auto& kv : b.blocks) b_by_row[kv.first.first].push_back(&kv);
    for (const auto& kv : c.blocks) c_by_col[kv.first.second].push_back(&kv);

    LinearSystem<K> sys(pool.count());
    for (const auto& [x, nx] : b.dims)
      for (const auto& [z, nz] : c.dims) {
        // (T C - B T)_x^z = 0
        std::vector<std::vector<std::pair<std::size_t, K>>> terms(nx * nz);
        if (auto it = c_by_col.find(z); it != c_by_col.end())
          for (const auto* pc : it->second) {
            const GradedElement& y = pc->first.first;
            if (!allowed(x, y)) continue;
            const Mat<K>& m = pc->second;
            for (std::size_t k = 0; k < m.rows(); ++k)
              for (std::size_t j = 0; j < nz; ++j) {
                if (is_zero(m.at(k, j))) continue;
                for (std::size_t i = 0; i < nx; ++i)
                  terms[i * nz + j].emplace_back(pool.id({x, y, i, k}), m.at(k, j));
              }
          }
        if (auto it = b_by_row.find(x); it != b_by_row.end())
          for (const auto* pb : it->second) {
            const GradedElement& y = pb->first.second;
            if (!allowed(y, z)) continue;
            const Mat<K>& m = pb->second;
            for (std::size_t i = 0; i < nx; ++i)
              for (std::size_t k = 0; k < m.cols(); ++k) {
                if (is_zero(m.at(i, k))) continue;
                for (std::size_t j = 0; j < nz; ++j)
                  terms[i * nz + j].emplace_back(pool.id({y, z, k, j}), -m.at(i, k));
              }
          }
        for (auto& t : terms)
          if (!t.empty()) sys.add_equation(std::move(t), K(0));
      }
    auto sol = sys.solve_with([this](std::size_t) { return scalar(); });
    // homogeneous systems are always consistent
    BlockMap<K> blocks;
    for (const auto& [x, nx] : b.dims)
      for (const auto& [y, ny] : c.dims) {
        if (!allowed(x, y)) continue;
        Mat<K> m(nx, ny);
        for (std::size_t i = 0; i < nx; ++i)
          for (std::size_t j = 0; j < ny; ++j) m.at(i, j) = (*sol)[pool.id({x, y, i, j})];
        if (!m.is_zero()) blocks.emplace(BlockKey{x, y}, std::move(m));
      }
    return BondMorphism<K>{b, c, std::move(blocks)};
  }

  /// Random sigma-tied kappa-region matrix; B L + L C is then a strictly
  /// upper-triangular morphism that is ~ 0 with witness L.
  KMatrix<K> kappa_witness(const BondObject<K>& b, const BondObject<K>& c) {
    const BasePoset& p = *b.poset;
    KMatrix<K> l{WitnessVariant::Kappa, b, c, {}};
    for (const auto& [x, nx] : b.dims)
      for (const auto& [y, ny] : c.dims) {
        if (!region_allows(WitnessVariant::Kappa, x, y)) continue;
        if (x == y && involution(p, x) < x) continue;  // filled from the partner
        Mat<K> m(nx, ny);
        bool any = false;
        for (std::size_t i = 0; i < nx; ++i)
          for (std::size_t j = 0; j < ny; ++j) {
            m.at(i, j) = scalar();
            any = any || !is_zero(m.at(i, j));
          }
        if (!any) continue;
        l.blocks.emplace(BlockKey{x, y}, m);
        if (x == y) {
          GradedElement sx = involution(p, x);
          if (!(sx == x) && b.dim(sx) == nx && c.dim(sx) == ny)
            l.blocks.emplace(BlockKey{sx, sx}, m);
        }
      }
    return l;
  }

  /// A morphism ~ 0 together with its certifying witness: B L + L C.
  std::pair<BondMorphism<K>, KMatrix<K>> null_morphism(const BondObject<K>& b,
                                                       const BondObject<K>& c) {
    KMatrix<K> l = kappa_witness(b, c);
    l.variant = WitnessVariant::K;  // certifies under the coarser relation too
    BlockMap<K> blocks =
        block_add(block_mul(b.blocks, l.blocks), block_mul(l.blocks, c.blocks));
    return {BondMorphism<K>{b, c, std::move(blocks)}, std::move(l)};
  }

  // ----- gentle side -----

  /// A small catalog of gentle algebras to rotate through.
  AlgebraPtr algebra() {
    switch (uniform(4)) {
      case 0: {  // loop x, bridge a, loop y; x^2 = y^2 = 0
        Quiver q{{"1", "2"},
                 {{"x", 0, 0}, {"a", 0, 1}, {"y", 1, 1}}};
        return std::make_shared<GentleAlgebra>(q, std::set<std::pair<int, int>>{{0, 0}, {2, 2}});
      }
      case 1: {  // Kronecker
        Quiver q{{"1", "2"}, {{"a", 0, 1}, {"b", 0, 1}}};
        return std::make_shared<GentleAlgebra>(q, std::set<std::pair<int, int>>{});
      }
      case 2: {  // A3 line with one relation ab = 0
        Quiver q{{"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}}};
        return std::make_shared<GentleAlgebra>(q, std::set<std::pair<int, int>>{{0, 1}});
      }
      default: {  // loop with x^2 = 0 plus an isolated vertex
        Quiver q{{"1", "2"}, {{"x", 0, 0}}};
        return std::make_shared<GentleAlgebra>(q, std::set<std::pair<int, int>>{{0, 0}});
      }
    }
  }

  /// Stalk complex: one projective in one degree.
  ProjComplex<K> stalk_complex(const AlgebraPtr& alg) {
    ProjComplex<K> p;
    p.algebra = alg;
    int v = static_cast<int>(uniform(alg->quiver().vertices.size()));
    std::int64_t j = static_cast<std::int64_t>(uniform(3)) - 1;
    p.mult[{v, j}] = 1 + uniform(2);
    return p;
  }

  /// Uniform sample of Hom(P, Q): Formula (1) is linear in the blocks.
  ChainMap<K> chain_map(const ProjComplex<K>& p, const ProjComplex<K>& q) {
    const GentleAlgebra& alg = *p.algebra;
    std::map<PathDeg, std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> var_of;
    std::size_t nvars = 0;
    std::set<std::int64_t> degs = detail::degrees_of(p);
    for (std::size_t w = 0; w < alg.path_count(); ++w) {
      const PathData& pd = alg.path(static_cast<int>(w));
      for (std::int64_t j : degs) {
        std::size_t rows = p.d(pd.source, j), cols = q.d(pd.target, j);
        if (rows == 0 || cols == 0) continue;
        var_of[{static_cast<int>(w), j}] = {nvars, {rows, cols}};
        nvars += rows * cols;
      }
    }
    auto vid = [&](int w, std::int64_t j, std::size_t i, std::size_t jj) {
      const auto& [base, shape] = var_of.at({w, j});
      return base + i * shape.second + jj;
    };
    LinearSystem<K> sys(nvars);
    for (std::size_t w = 0; w < alg.path_count(); ++w) {
      const PathData& pd = alg.path(static_cast<int>(w));
      for (std::int64_t j : degs) {
        std::size_t rows = p.d(pd.source, j), cols = q.d(pd.target, j + 1);
        if (rows == 0 || cols == 0) continue;
        std::vector<std::vector<std::pair<std::size_t, K>>> terms(rows * cols);
        for (const auto& [w1, w2] : alg.factorizations(static_cast<int>(w))) {
          if (var_of.count({w1, j})) {
            Mat<K> a = q.block_or_zero(w2, j);  // phi_{w1,j} A~_{w2,j}
            std::size_t mid = var_of.at({w1, j}).second.second;
            for (std::size_t i = 0; i < rows; ++i)
              for (std::size_t k = 0; k < mid; ++k)
                for (std::size_t jj = 0; jj < cols; ++jj)
                  if (!is_zero(a.at(k, jj)))
                    terms[i * cols + jj].emplace_back(vid(w1, j, i, k), a.at(k, jj));
          }
          if (var_of.count({w2, j + 1})) {
            Mat<K> a = p.block_or_zero(w1, j);  // A_{w1,j} phi_{w2,j+1}
            for (std::size_t i = 0; i < rows; ++i)
              for (std::size_t k = 0; k < a.cols(); ++k)
                if (!is_zero(a.at(i, k)))
                  for (std::size_t jj = 0; jj < cols; ++jj)
                    terms[i * cols + jj].emplace_back(vid(w2, j + 1, k, jj), -a.at(i, k));
          }
        }
        for (auto& t : terms)
          if (!t.empty()) sys.add_equation(std::move(t), K(0));
      }
    }
    auto sol = sys.solve_with([this](std::size_t) { return scalar(); });
    ChainMap<K> out;
    out.source = p;
    out.target = q;
    for (const auto& [key, info] : var_of) {
      const auto& [base, shape] = info;
      Mat<K> m(shape.first, shape.second);
      for (std::size_t i = 0; i < shape.first; ++i)
        for (std::size_t jj = 0; jj < shape.second; ++jj)
          m.at(i, jj) = (*sol)[base + i * shape.second + jj];
      if (!m.is_zero()) out.blocks.emplace(key, std::move(m));
    }
    return out;
  }

  /// Random valid complex: cone-closure of stalks, depth-limited.
  ProjComplex<K> complex(const AlgebraPtr& alg, int depth = 2) {
    ProjComplex<K> cur = stalk_complex(alg);
    for (int it = 0; it < depth; ++it) {
      ProjComplex<K> other = stalk_complex(alg);
      ChainMap<K> f = coin() ? chain_map(cur, other) : chain_map(other, cur);
      cur = mapping_cone(f).cone;
    }
    return cur;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  static std::uint64_t scalar_range() {
    if constexpr (std::is_same_v<K, Gf>)
      return Gf::modulus();
    else
      return 7;  // small integers keep rational blowup in check
  }
  std::mt19937_64 rng_;
};

}  // namespace bondcat
