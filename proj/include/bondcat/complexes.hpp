#pragma once

#include "bondcat/gentle.hpp"
#include "bondcat/linear.hpp"
#include "bondcat/matrix.hpp"

namespace bondcat {

/// (path id, homological degree) index for differential / chain map blocks.
using PathDeg = std::pair<int, std::int64_t>;

/// A bounded complex of projectives, stored as multiplicities d_{v,j} plus
/// the path-indexed coefficient blocks A_{w,j} of each differential:
/// rows index summands of P^j, columns summands of P^{j+1}.
template <Scalar K>
struct ProjComplex {
  AlgebraPtr algebra;
  std::map<std::pair<int, std::int64_t>, std::size_t> mult;  // (vertex, degree) -> count
  std::map<PathDeg, Mat<K>> diff;

  std::size_t d(int vertex, std::int64_t degree) const {
    auto it = mult.find({vertex, degree});
    return it == mult.end() ? 0 : it->second;
  }
  Mat<K> block_or_zero(int w, std::int64_t j) const {
    auto it = diff.find({w, j});
    if (it != diff.end()) return it->second;
    const PathData& p = algebra->path(w);
    return Mat<K>(d(p.source, j), d(p.target, j + 1));
  }
  bool is_zero_complex() const { return mult.empty(); }

  void normalize() {
    for (auto it = mult.begin(); it != mult.end();)
      it = it->second == 0 ? mult.erase(it) : std::next(it);
    for (auto it = diff.begin(); it != diff.end();)
      it = (it->second.empty_shape() || it->second.is_zero()) ? diff.erase(it) : std::next(it);
  }
  bool operator==(const ProjComplex& o) const {
    return algebra == o.algebra && mult == o.mult && diff == o.diff;
  }
};

/// A chain map as path-indexed blocks phi_{w,j}: d_{s(w),j} x d~_{t(w),j}.
template <Scalar K>
struct ChainMap {
  ProjComplex<K> source, target;
  std::map<PathDeg, Mat<K>> blocks;

  Mat<K> block_or_zero(int w, std::int64_t j) const {
    auto it = blocks.find({w, j});
    if (it != blocks.end()) return it->second;
    const PathData& p = source.algebra->path(w);
    return Mat<K>(source.d(p.source, j), target.d(p.target, j));
  }
  void normalize() {
    for (auto it = blocks.begin(); it != blocks.end();)
      it = (it->second.empty_shape() || it->second.is_zero()) ? blocks.erase(it) : std::next(it);
  }
  bool operator==(const ChainMap& o) const {
    return source == o.source && target == o.target && blocks == o.blocks;
  }
};

/// Degree-indexed homotopy blocks S_{w,j}: d_{s(w),j} x d~_{t(w),j-1}.
template <Scalar K>
using Homotopy = std::map<PathDeg, Mat<K>>;

namespace detail {

template <Scalar K>
std::set<std::int64_t> degrees_of(const ProjComplex<K>& p) {
  std::set<std::int64_t> out;
  for (const auto& [k, n] : p.mult) {
    (void)n;
    out.insert(k.second);
  }
  return out;
}

}  // namespace detail

/// Shape checks plus the path-basis expansion of d d = 0: for every w in Pa
/// and degree j, the signed sum over splittings w = w1 w2 must vanish.
template <Scalar K>
Report validate_complex(const ProjComplex<K>& c) {
  Report rep;
  if (!c.algebra) {
    rep.fail("complex has no algebra");
    return rep;
  }
  const GentleAlgebra& alg = *c.algebra;
  for (const auto& [key, m] : c.diff) {
    const auto& [w, j] = key;
    if (w < 0 || w >= static_cast<int>(alg.path_count())) {
      rep.fail("differential indexed by unknown path id " + std::to_string(w));
      continue;
    }
    const PathData& p = alg.path(w);
    if (m.rows() != c.d(p.source, j) || m.cols() != c.d(p.target, j + 1))
      rep.fail("block A_{" + p.name + "," + std::to_string(j) + "} has shape " + m.shape_str() +
               ", multiplicities give " + std::to_string(c.d(p.source, j)) + "x" +
               std::to_string(c.d(p.target, j + 1)));
  }
  if (!rep.ok()) return rep;

  std::set<std::int64_t> degs = detail::degrees_of(c);
  for (std::size_t w = 0; w < alg.path_count(); ++w) {
    const PathData& p = alg.path(static_cast<int>(w));
    for (std::int64_t j : degs) {
      std::size_t rows = c.d(p.source, j), cols = c.d(p.target, j + 2);
      if (rows == 0 || cols == 0) continue;
      Mat<K> acc(rows, cols);
      for (const auto& [w1, w2] : alg.factorizations(static_cast<int>(w)))
        acc = acc + c.block_or_zero(w1, j) * c.block_or_zero(w2, j + 1);
      if (!acc.is_zero())
        rep.fail("dd != 0 in the path basis at (" + p.name + "," + std::to_string(j) + ")");
    }
  }
  return rep;
}

/// Formula (1): for every path w and degree j, the two ways around the
/// square agree: sum phi_{w1,j} A~_{w2,j} = sum A_{w3,j} phi_{w4,j+1}.
template <Scalar K>
Report validate_chain_map(const ChainMap<K>& f) {
  Report rep;
  if (!f.source.algebra || f.source.algebra != f.target.algebra) {
    rep.fail("chain map endpoints live over different algebras");
    return rep;
  }
  const GentleAlgebra& alg = *f.source.algebra;
  for (const auto& [key, m] : f.blocks) {
    const auto& [w, j] = key;
    const PathData& p = alg.path(w);
    if (m.rows() != f.source.d(p.source, j) || m.cols() != f.target.d(p.target, j))
      rep.fail("block phi_{" + p.name + "," + std::to_string(j) + "} has shape " + m.shape_str());
  }
  if (!rep.ok()) return rep;

  std::set<std::int64_t> degs = detail::degrees_of(f.source);
  for (std::int64_t j : detail::degrees_of(f.target)) degs.insert(j);
  for (std::size_t w = 0; w < alg.path_count(); ++w) {
    const PathData& p = alg.path(static_cast<int>(w));
    for (std::int64_t j : degs) {
      std::size_t rows = f.source.d(p.source, j), cols = f.target.d(p.target, j + 1);
      if (rows == 0 || cols == 0) continue;
      Mat<K> lhs(rows, cols), rhs(rows, cols);
      for (const auto& [w1, w2] : alg.factorizations(static_cast<int>(w))) {
        lhs = lhs + f.block_or_zero(w1, j) * f.target.block_or_zero(w2, j);
        rhs = rhs + f.source.block_or_zero(w1, j) * f.block_or_zero(w2, j + 1);
      }
      if (!(lhs == rhs))
        rep.fail("Formula (1) fails at (" + p.name + "," + std::to_string(j) + ")");
    }
  }
  return rep;
}

/// [k]: degrees drop by k, differentials pick up (-1)^k.
template <Scalar K>
ProjComplex<K> shift_complex(const ProjComplex<K>& c, std::int64_t k = 1) {
  ProjComplex<K> out;
  out.algebra = c.algebra;
  for (const auto& [key, n] : c.mult)
    out.mult.emplace(std::pair<int, std::int64_t>{key.first, shifted({0, key.second}, -k).degree},
                     n);
  bool neg = (k % 2) != 0;
  for (const auto& [key, m] : c.diff)
    out.diff.emplace(PathDeg{key.first, key.second - k}, neg ? -m : m);
  return out;
}

template <Scalar K>
ChainMap<K> shift_chain_map(const ChainMap<K>& f, std::int64_t k = 1) {
  ChainMap<K> out;
  out.source = shift_complex(f.source, k);
  out.target = shift_complex(f.target, k);
  for (const auto& [key, m] : f.blocks) out.blocks.emplace(PathDeg{key.first, key.second - k}, m);
  return out;
}

template <Scalar K>
ChainMap<K> identity_chain_map(const ProjComplex<K>& c) {
  ChainMap<K> out;
  out.source = out.target = c;
  for (const auto& [key, n] : c.mult) {
    int e = c.algebra->trivial_path(key.first);
    out.blocks.emplace(PathDeg{e, key.second}, Mat<K>::identity(n));
  }
  return out;
}

template <Scalar K>
ChainMap<K> zero_chain_map(ProjComplex<K> src, ProjComplex<K> dst) {
  return ChainMap<K>{std::move(src), std::move(dst), {}};
}

/// (f g)_{w,j} = sum over w = w1 w2 of f_{w1,j} g_{w2,j}.
template <Scalar K>
ChainMap<K> compose_chain_maps(const ChainMap<K>& f, const ChainMap<K>& g) {
  if (!(f.target == g.source)) throw ComposeMismatch("compose_chain_maps: f.target != g.source");
  const GentleAlgebra& alg = *f.source.algebra;
  ChainMap<K> out;
  out.source = f.source;
  out.target = g.target;
  std::set<std::int64_t> degs = detail::degrees_of(f.source);
  for (std::size_t w = 0; w < alg.path_count(); ++w) {
    const PathData& p = alg.path(static_cast<int>(w));
    for (std::int64_t j : degs) {
      std::size_t rows = f.source.d(p.source, j), cols = g.target.d(p.target, j);
      if (rows == 0 || cols == 0) continue;
      Mat<K> acc(rows, cols);
      for (const auto& [w1, w2] : alg.factorizations(static_cast<int>(w)))
        acc = acc + f.block_or_zero(w1, j) * g.block_or_zero(w2, j);
      if (!acc.is_zero()) out.blocks.emplace(PathDeg{static_cast<int>(w), j}, std::move(acc));
    }
  }
  return out;
}

template <Scalar K>
ChainMap<K> add_chain_maps(const ChainMap<K>& f, const ChainMap<K>& g) {
  if (!(f.source == g.source) || !(f.target == g.target))
    throw ComposeMismatch("add_chain_maps: maps are not parallel");
  ChainMap<K> out = f;
  for (const auto& [key, m] : g.blocks) {
    auto [slot, fresh] = out.blocks.try_emplace(key, m);
    if (!fresh) slot->second = slot->second + m;
  }
  out.normalize();
  return out;
}

template <Scalar K>
ChainMap<K> scale_chain_map(const K& c, const ChainMap<K>& f) {
  ChainMap<K> out = f;
  for (auto& [key, m] : out.blocks) m = m.scaled(c);
  out.normalize();
  return out;
}

template <Scalar K>
ChainMap<K> sub_chain_maps(const ChainMap<K>& f, const ChainMap<K>& g) {
  return add_chain_maps(f, scale_chain_map(K(0) - K(1), g));
}

/// Direct sum, f-summands listed first inside every (vertex, degree) slot.
template <Scalar K>
ProjComplex<K> direct_sum(const ProjComplex<K>& a, const ProjComplex<K>& b) {
  if (a.algebra != b.algebra) throw ComposeMismatch("direct_sum: different algebras");
  ProjComplex<K> out;
  out.algebra = a.algebra;
  for (const auto& [k, n] : a.mult) out.mult[k] += n;
  for (const auto& [k, n] : b.mult) out.mult[k] += n;
  const GentleAlgebra& alg = *a.algebra;
  std::set<PathDeg> keys;
  for (const auto& [k, m] : a.diff) keys.insert(k);
  for (const auto& [k, m] : b.diff) keys.insert(k);
  for (const auto& [w, j] : keys) {
    const PathData& p = alg.path(w);
    Mat<K> blk(out.mult.count({p.source, j}) ? out.mult[{p.source, j}] : 0,
               out.mult.count({p.target, j + 1}) ? out.mult[{p.target, j + 1}] : 0);
    blk.paste(0, 0, a.block_or_zero(w, j));
    blk.paste(a.d(p.source, j), a.d(p.target, j + 1), b.block_or_zero(w, j));
    out.diff.emplace(PathDeg{w, j}, std::move(blk));
  }
  out.normalize();
  return out;
}

/// The mapping cone of phi with its canonical inclusion and projection:
/// C(phi)^j = P^{j+1} (+) P~^j, blocks [[-A, phi], [0, A~]] per path.
template <Scalar K>
struct ConeData {
  ProjComplex<K> cone;
  ChainMap<K> iota;  // P~ -> C(phi)
  ChainMap<K> pi;    // C(phi) -> P[1]
};

template <Scalar K>
ConeData<K> mapping_cone(const ChainMap<K>& phi) {
  const ProjComplex<K>& p = phi.source;
  const ProjComplex<K>& q = phi.target;
  const GentleAlgebra& alg = *p.algebra;
  ProjComplex<K> cone;
  cone.algebra = p.algebra;
  for (const auto& [k, n] : p.mult) {
    if (k.second == std::numeric_limits<std::int64_t>::min())
      throw DegreeOverflow("cone degree underflows");
    cone.mult[{k.first, k.second - 1}] += n;
  }
  for (const auto& [k, n] : q.mult) cone.mult[{k.first, k.second}] += n;

  std::set<PathDeg> keys;
  for (const auto& [k, m] : p.diff) keys.insert({k.first, k.second - 1});
  for (const auto& [k, m] : q.diff) keys.insert(k);
  for (const auto& [k, m] : phi.blocks) keys.insert({k.first, k.second - 1});
  for (const auto& [w, j] : keys) {
    const PathData& pd = alg.path(w);
    std::size_t rows = (cone.mult.count({pd.source, j}) ? cone.mult[{pd.source, j}] : 0);
    std::size_t cols = (cone.mult.count({pd.target, j + 1}) ? cone.mult[{pd.target, j + 1}] : 0);
    if (rows == 0 || cols == 0) continue;
    Mat<K> blk(rows, cols);
    blk.paste(0, 0, -p.block_or_zero(w, j + 1));
    blk.paste(0, p.d(pd.target, j + 2), phi.block_or_zero(w, j + 1));
    blk.paste(p.d(pd.source, j + 1), p.d(pd.target, j + 2), q.block_or_zero(w, j));
    cone.diff.emplace(PathDeg{w, j}, std::move(blk));
  }
  cone.normalize();

  ChainMap<K> iota;
  iota.source = q;
  iota.target = cone;
  for (const auto& [k, n] : q.mult) {
    const auto& [v, j] = k;
    Mat<K> blk(n, cone.mult.count({v, j}) ? cone.mult[{v, j}] : n);
    for (std::size_t i = 0; i < n; ++i) blk.at(i, p.d(v, j + 1) + i) = K(1);
    iota.blocks.emplace(PathDeg{alg.trivial_path(v), j}, std::move(blk));
  }

  ProjComplex<K> p1 = shift_complex(p, 1);
  ChainMap<K> pi;
  pi.source = cone;
  pi.target = p1;
  for (const auto& [k, n] : p1.mult) {
    const auto& [v, j] = k;
    Mat<K> blk(cone.mult.count({v, j}) ? cone.mult[{v, j}] : n, n);
    for (std::size_t i = 0; i < n; ++i) blk.at(i, i) = K(1);
    pi.blocks.emplace(PathDeg{alg.trivial_path(v), j}, std::move(blk));
  }
  return ConeData<K>{std::move(cone), std::move(iota), std::move(pi)};
}

/// Solves phi - psi = S d~ + d S in the path basis; the returned witness is
/// exact and re-verified. Nullopt means the maps are not homotopic.
template <Scalar K>
std::optional<Homotopy<K>> homotopy_witness(const ChainMap<K>& phi, const ChainMap<K>& psi) {
  if (!(phi.source == psi.source) || !(phi.target == psi.target))
    throw ComposeMismatch("homotopy_witness: maps are not parallel");
  const ProjComplex<K>& p = phi.source;
  const ProjComplex<K>& q = phi.target;
  const GentleAlgebra& alg = *p.algebra;

  // variables: entries of S_{w,j} with d(s(w),j) > 0 and d~(t(w),j-1) > 0
  std::map<PathDeg, std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> var_of;
  std::size_t nvars = 0;
  std::set<std::int64_t> degs = detail::degrees_of(p);
  for (std::int64_t j : detail::degrees_of(q)) degs.insert(j + 1);
  for (std::size_t w = 0; w < alg.path_count(); ++w) {
    const PathData& pd = alg.path(static_cast<int>(w));
    for (std::int64_t j : degs) {
      std::size_t rows = p.d(pd.source, j), cols = q.d(pd.target, j - 1);
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
  ChainMap<K> want = sub_chain_maps(phi, psi);
  for (std::size_t w = 0; w < alg.path_count(); ++w) {
    const PathData& pd = alg.path(static_cast<int>(w));
    for (std::int64_t j : degs) {
      std::size_t rows = p.d(pd.source, j), cols = q.d(pd.target, j);
      if (rows == 0 || cols == 0) continue;
      Mat<K> rhs = want.block_or_zero(static_cast<int>(w), j);
      std::vector<std::vector<std::pair<std::size_t, K>>> terms(rows * cols);
      for (const auto& [w1, w2] : alg.factorizations(static_cast<int>(w))) {
        // S_{w1,j} * A~_{w2,j-1}
        if (var_of.count({w1, j})) {
          Mat<K> a = q.block_or_zero(w2, j - 1);
          std::size_t mid = var_of.at({w1, j}).second.second;
          for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < mid; ++k)
              for (std::size_t jj = 0; jj < cols; ++jj)
                if (!is_zero(a.at(k, jj)))
                  terms[i * cols + jj].emplace_back(vid(w1, j, i, k), a.at(k, jj));
        }
        // A_{w1,j} * S_{w2,j+1}
        if (var_of.count({w2, j + 1})) {
          Mat<K> a = p.block_or_zero(w1, j);
          std::size_t mid = a.cols();
          for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < mid; ++k)
              if (!is_zero(a.at(i, k)))
                for (std::size_t jj = 0; jj < cols; ++jj)
                  terms[i * cols + jj].emplace_back(vid(w2, j + 1, k, jj), a.at(i, k));
        }
      }
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t jj = 0; jj < cols; ++jj) {
          if (terms[i * cols + jj].empty() && is_zero(rhs.at(i, jj))) continue;
          sys.add_equation(std::move(terms[i * cols + jj]), rhs.at(i, jj));
        }
    }
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  Homotopy<K> s;
  for (const auto& [key, info] : var_of) {
    const auto& [base, shape] = info;
    Mat<K> m(shape.first, shape.second);
    for (std::size_t i = 0; i < shape.first; ++i)
      for (std::size_t jj = 0; jj < shape.second; ++jj) m.at(i, jj) = (*sol)[base + i * shape.second + jj];
    if (!m.is_zero()) s.emplace(key, std::move(m));
  }
  return s;
}

/// Direct verification that phi - psi = S d~ + d S for a given witness.
template <Scalar K>
bool homotopy_checks(const ChainMap<K>& phi, const ChainMap<K>& psi, const Homotopy<K>& s) {
  const ProjComplex<K>& p = phi.source;
  const ProjComplex<K>& q = phi.target;
  const GentleAlgebra& alg = *p.algebra;
  auto s_block = [&](int w, std::int64_t j) {
    auto it = s.find({w, j});
    if (it != s.end()) return it->second;
    const PathData& pd = alg.path(w);
    return Mat<K>(p.d(pd.source, j), q.d(pd.target, j - 1));
  };
  ChainMap<K> want = sub_chain_maps(phi, psi);
  std::set<std::int64_t> degs = detail::degrees_of(p);
  for (std::int64_t j : detail::degrees_of(q)) degs.insert(j);
  for (std::size_t w = 0; w < alg.path_count(); ++w) {
    const PathData& pd = alg.path(static_cast<int>(w));
    for (std::int64_t j : degs) {
      std::size_t rows = p.d(pd.source, j), cols = q.d(pd.target, j);
      if (rows == 0 || cols == 0) continue;
      Mat<K> acc(rows, cols);
      for (const auto& [w1, w2] : alg.factorizations(static_cast<int>(w))) {
        acc = acc + s_block(w1, j) * q.block_or_zero(w2, j - 1);
        acc = acc + p.block_or_zero(w1, j) * s_block(w2, j + 1);
      }
      if (!(acc == want.block_or_zero(static_cast<int>(w), j))) return false;
    }
  }
  return true;
}

}  // namespace bondcat
