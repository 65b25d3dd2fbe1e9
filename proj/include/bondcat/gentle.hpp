#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bondcat/errors.hpp"
#include "bondcat/poset.hpp"

namespace bondcat {

struct Arrow {
  std::string name;
  int from = 0, to = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name) return static_cast<int>(i);
    return -1;
  }
  int arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return static_cast<int>(i);
    return -1;
  }
};

/// A path of the algebra: either trivial at a vertex, or a relation-free
/// arrow sequence. Nontrivial paths carry their unique embedding into a
/// maximal path as (maximal index, start offset).
struct PathData {
  std::vector<int> arrows;  // empty means trivial
  int source = 0, target = 0;
  int maximal = -1;  // index into the maximal path list (nontrivial paths only)
  int offset = 0;
  std::string name;

  int length() const { return static_cast<int>(arrows.size()); }
  bool trivial() const { return arrows.empty(); }
};

/// Structural gentleness check, run before any enumeration: the four
/// arrow-branching conditions plus finite-dimensionality (no relation-free
/// oriented cycle).
inline Report validate_gentle(const Quiver& q, const std::set<std::pair<int, int>>& relations) {
  Report rep;
  std::set<std::string> seen;
  for (const auto& v : q.vertices)
    if (!seen.insert(v).second) rep.fail("duplicate vertex '" + v + "'");
  seen.clear();
  for (const auto& a : q.arrows) {
    if (!seen.insert(a.name).second) rep.fail("duplicate arrow '" + a.name + "'");
    if (a.from < 0 || a.from >= static_cast<int>(q.vertices.size()) || a.to < 0 ||
        a.to >= static_cast<int>(q.vertices.size()))
      rep.fail("arrow '" + a.name + "' has an endpoint outside the vertex list");
  }
  if (!rep.ok()) return rep;

  for (const auto& [a, b] : relations) {
    if (a < 0 || a >= static_cast<int>(q.arrows.size()) || b < 0 ||
        b >= static_cast<int>(q.arrows.size())) {
      rep.fail("relation references an unknown arrow");
      continue;
    }
    if (q.arrows[a].to != q.arrows[b].from)
      rep.fail("relation " + q.arrows[a].name + q.arrows[b].name + " is not a length-2 path");
  }
  if (!rep.ok()) return rep;

  int n = static_cast<int>(q.vertices.size());
  std::vector<int> out_count(n, 0), in_count(n, 0);
  for (const auto& a : q.arrows) {
    ++out_count[a.from];
    ++in_count[a.to];
  }
  for (int v = 0; v < n; ++v) {
    if (out_count[v] > 2)
      rep.fail("condition (i): vertex '" + q.vertices[v] + "' is the source of " +
               std::to_string(out_count[v]) + " arrows");
    if (in_count[v] > 2)
      rep.fail("condition (i): vertex '" + q.vertices[v] + "' is the target of " +
               std::to_string(in_count[v]) + " arrows");
  }

  int m = static_cast<int>(q.arrows.size());
  for (int a = 0; a < m; ++a) {
    int cont_free = 0, cont_rel = 0, pre_free = 0, pre_rel = 0;
    for (int b = 0; b < m; ++b) {
      if (q.arrows[a].to == q.arrows[b].from)
        (relations.count({a, b}) ? cont_rel : cont_free)++;
      if (q.arrows[b].to == q.arrows[a].from)
        (relations.count({b, a}) ? pre_rel : pre_free)++;
    }
    const std::string& an = q.arrows[a].name;
    if (cont_free > 1) rep.fail("condition (ii): arrow '" + an + "' has two relation-free continuations");
    if (pre_free > 1) rep.fail("condition (ii): arrow '" + an + "' has two relation-free predecessors");
    if (cont_rel > 1) rep.fail("condition (iii): arrow '" + an + "' appears in two relations on the left");
    if (pre_rel > 1) rep.fail("condition (iii): arrow '" + an + "' appears in two relations on the right");
  }
  if (!rep.ok()) return rep;

  // Finite dimension: the relation-free continuation graph on arrows must be
  // acyclic, otherwise some path never dies.
  std::vector<int> state(m, 0);  // 0 new, 1 on stack, 2 done
  std::vector<int> stack;
  for (int s = 0; s < m; ++s) {
    if (state[s] != 0) continue;
    stack.push_back(s);
    std::vector<std::pair<int, int>> dfs{{s, 0}};
    state[s] = 1;
    while (!dfs.empty()) {
      auto& [a, next] = dfs.back();
      bool advanced = false;
      for (int b = next; b < m; ++b) {
        if (q.arrows[a].to != q.arrows[b].from || relations.count({a, b})) continue;
        next = b + 1;
        if (state[b] == 1) {
          rep.fail("NotFiniteDimensional: relation-free cycle through arrow '" + q.arrows[b].name +
                   "'");
          return rep;
        }
        if (state[b] == 0) {
          state[b] = 1;
          dfs.emplace_back(b, 0);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        state[a] = 2;
        dfs.pop_back();
      }
    }
  }
  return rep;
}

/// A gentle algebra with its derived path data: the basis Pa, the maximal
/// paths M in a fixed linear order, unique sub-path embeddings, and the
/// poset Y(A) x Z with involution.
class GentleAlgebra {
 public:
  GentleAlgebra(Quiver q, std::set<std::pair<int, int>> relations,
                const std::vector<std::string>& maximal_order = {})
      : q_(std::move(q)), relations_(std::move(relations)) {
    Report rep = validate_gentle(q_, relations_);
    if (!rep.ok()) {
      for (const auto& pr : rep.problems)
        if (pr.rfind("NotFiniteDimensional", 0) == 0) throw NotFiniteDimensional(pr);
      throw Error("not a gentle presentation:\n" + rep.str());
    }
    enumerate_paths();
    find_maximal(maximal_order);
    build_poset();
  }

  const Quiver& quiver() const { return q_; }
  const std::set<std::pair<int, int>>& relations() const { return relations_; }
  std::size_t path_count() const { return paths_.size(); }
  const PathData& path(int id) const { return paths_[static_cast<std::size_t>(id)]; }
  const std::vector<int>& maximal_paths() const { return maximal_; }
  int trivial_path(int vertex) const { return vertex; }  // ids 0..|Q0|-1 are trivial

  int path_id(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
  }

  /// Concatenation in the algebra: a path of Pa, "zero" (nullopt) when the
  /// product runs into a relation, EndpointMismatch when it does not typecheck.
  std::optional<int> path_mul(int w1, int w2) const {
    const PathData& a = paths_[static_cast<std::size_t>(w1)];
    const PathData& b = paths_[static_cast<std::size_t>(w2)];
    if (a.target != b.source)
      throw EndpointMismatch("path product " + a.name + " * " + b.name + ": endpoints differ");
    if (a.trivial()) return w2;
    if (b.trivial()) return w1;
    std::vector<int> seq = a.arrows;
    seq.insert(seq.end(), b.arrows.begin(), b.arrows.end());
    auto it = by_arrows_.find(seq);
    if (it == by_arrows_.end()) return std::nullopt;
    return it->second;
  }

  /// All two-factor splittings w = w1 w2 inside Pa (trivial factors included).
  const std::vector<std::pair<int, int>>& factorizations(int w) const {
    return factorizations_[static_cast<std::size_t>(w)];
  }

  // --- poset Y(A) ---
  const PosetPtr& poset() const { return poset_; }
  /// Poset element index of the prefix of maximal path m of length len.
  int poset_element(int m, int len) const { return poset_offsets_[static_cast<std::size_t>(m)] + len; }
  int element_maximal(int e) const { return elem_maximal_[static_cast<std::size_t>(e)]; }
  int element_prefix_len(int e) const { return elem_len_[static_cast<std::size_t>(e)]; }
  int element_target(int e) const { return elem_target_[static_cast<std::size_t>(e)]; }
  /// The (at most two) poset elements whose prefix target is `vertex`.
  const std::vector<int>& elements_with_target(int vertex) const {
    return target_elems_[static_cast<std::size_t>(vertex)];
  }
  /// Unique placement of a nontrivial path: row element and column element.
  std::pair<int, int> placement(int w) const {
    const PathData& pd = paths_[static_cast<std::size_t>(w)];
    if (pd.trivial()) throw Error("placement: trivial paths replicate, use elements_with_target");
    return {poset_element(pd.maximal, pd.offset), poset_element(pd.maximal, pd.offset + pd.length())};
  }

 private:
  void enumerate_paths() {
    int nv = static_cast<int>(q_.vertices.size());
    for (int v = 0; v < nv; ++v) {
      PathData p;
      p.source = p.target = v;
      p.name = "e" + q_.vertices[static_cast<std::size_t>(v)];
      paths_.push_back(std::move(p));
    }
    std::vector<int> level;
    for (std::size_t a = 0; a < q_.arrows.size(); ++a) {
      PathData p;
      p.arrows = {static_cast<int>(a)};
      p.source = q_.arrows[a].from;
      p.target = q_.arrows[a].to;
      paths_.push_back(std::move(p));
      level.push_back(static_cast<int>(paths_.size()) - 1);
    }
    while (!level.empty()) {
      std::vector<int> next;
      for (int id : level) {
        for (std::size_t b = 0; b < q_.arrows.size(); ++b) {
          const PathData& p = paths_[static_cast<std::size_t>(id)];
          if (q_.arrows[b].from != p.target) continue;
          if (relations_.count({p.arrows.back(), static_cast<int>(b)})) continue;
          PathData np;
          np.arrows = p.arrows;
          np.arrows.push_back(static_cast<int>(b));
          np.source = p.source;
          np.target = q_.arrows[b].to;
          paths_.push_back(std::move(np));
          next.push_back(static_cast<int>(paths_.size()) - 1);
          if (paths_.size() > 100000) throw Error("path explosion; algebra is not finite dimensional");
        }
      }
      level = std::move(next);
    }
    // names: concatenated arrow names, dotted if that would collide
    bool collide = false;
    {
      std::set<std::string> names;
      for (auto& p : paths_) {
        if (p.trivial()) continue;
        std::string n;
        for (int a : p.arrows) n += q_.arrows[static_cast<std::size_t>(a)].name;
        if (!names.insert(n).second) collide = true;
      }
    }
    for (auto& p : paths_) {
      if (p.trivial()) continue;
      std::string n;
      for (int a : p.arrows) {
        if (collide && !n.empty()) n += '.';
        n += q_.arrows[static_cast<std::size_t>(a)].name;
      }
      p.name = n;
    }
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      by_name_[paths_[i].name] = static_cast<int>(i);
      if (!paths_[i].trivial()) by_arrows_[paths_[i].arrows] = static_cast<int>(i);
    }
    // factorizations w = w1 w2 with both halves in Pa (subwords of a
    // relation-free word are relation-free, so every split qualifies)
    factorizations_.resize(paths_.size());
    for (std::size_t w = 0; w < paths_.size(); ++w) {
      const PathData& p = paths_[w];
      if (p.trivial()) {
        factorizations_[w] = {{static_cast<int>(w), static_cast<int>(w)}};
        continue;
      }
      std::vector<std::pair<int, int>> fs;
      for (int cut = 0; cut <= p.length(); ++cut) {
        int w1, w2;
        if (cut == 0)
          w1 = trivial_path(p.source);
        else
          w1 = by_arrows_.at(std::vector<int>(p.arrows.begin(), p.arrows.begin() + cut));
        if (cut == p.length())
          w2 = trivial_path(p.target);
        else
          w2 = by_arrows_.at(std::vector<int>(p.arrows.begin() + cut, p.arrows.end()));
        fs.emplace_back(w1, w2);
      }
      factorizations_[w] = std::move(fs);
    }
  }

  bool left_extendable(const PathData& p) const {
    for (std::size_t a = 0; a < q_.arrows.size(); ++a) {
      if (q_.arrows[a].to != p.source) continue;
      if (p.trivial() || !relations_.count({static_cast<int>(a), p.arrows.front()})) return true;
    }
    return false;
  }
  bool right_extendable(const PathData& p) const {
    for (std::size_t b = 0; b < q_.arrows.size(); ++b) {
      if (q_.arrows[b].from != p.target) continue;
      if (p.trivial() || !relations_.count({p.arrows.back(), static_cast<int>(b)})) return true;
    }
    return false;
  }

  void find_maximal(const std::vector<std::string>& order) {
    for (std::size_t w = 0; w < paths_.size(); ++w)
      if (!left_extendable(paths_[w]) && !right_extendable(paths_[w]))
        maximal_.push_back(static_cast<int>(w));
    if (!order.empty()) {
      if (order.size() != maximal_.size())
        throw Error("maximal_order must list every maximal path exactly once");
      std::vector<int> reordered;
      std::set<int> used;
      for (const auto& name : order) {
        int id = path_id(name);
        if (id < 0 || std::find(maximal_.begin(), maximal_.end(), id) == maximal_.end())
          throw Error("maximal_order entry '" + name + "' is not a maximal path");
        if (!used.insert(id).second) throw Error("maximal_order repeats '" + name + "'");
        reordered.push_back(id);
      }
      maximal_ = std::move(reordered);
    }
    // register embeddings; a repeated sub-path would break uniqueness
    for (std::size_t mi = 0; mi < maximal_.size(); ++mi) {
      const PathData& m = paths_[static_cast<std::size_t>(maximal_[mi])];
      for (int s = 0; s < m.length(); ++s)
        for (int e = s + 1; e <= m.length(); ++e) {
          std::vector<int> sub(m.arrows.begin() + s, m.arrows.begin() + e);
          int id = by_arrows_.at(sub);
          PathData& pd = paths_[static_cast<std::size_t>(id)];
          if (pd.maximal >= 0 && !(pd.maximal == static_cast<int>(mi) && pd.offset == s))
            throw Error("path '" + pd.name + "' embeds in two maximal paths; input is not gentle");
          pd.maximal = static_cast<int>(mi);
          pd.offset = s;
        }
    }
    for (const auto& p : paths_)
      if (!p.trivial() && p.maximal < 0)
        throw Error("path '" + p.name + "' is not a sub-path of any maximal path");
  }

  void build_poset() {
    // Elements: for each maximal path m in order, the prefixes of length
    // 0..len(m). Distinct maximal paths contribute distinct trivial copies.
    std::vector<std::string> names;
    std::map<std::string, int> name_count;
    std::vector<std::string> raw;
    for (int mid : maximal_) {
      const PathData& m = paths_[static_cast<std::size_t>(mid)];
      poset_offsets_.push_back(static_cast<int>(raw.size()));
      for (int len = 0; len <= std::max(m.length(), 0); ++len) {
        std::string nm;
        int target;
        if (len == 0) {
          nm = "e" + q_.vertices[static_cast<std::size_t>(m.source)];
          target = m.source;
        } else {
          std::vector<int> sub(m.arrows.begin(), m.arrows.begin() + len);
          nm = paths_[static_cast<std::size_t>(by_arrows_.at(sub))].name;
          target = q_.arrows[static_cast<std::size_t>(m.arrows[static_cast<std::size_t>(len - 1)])].to;
        }
        raw.push_back(nm);
        ++name_count[nm];
        elem_maximal_.push_back(static_cast<int>(poset_offsets_.size()) - 1);
        elem_len_.push_back(len);
        elem_target_.push_back(target);
      }
    }
    for (std::size_t e = 0; e < raw.size(); ++e) {
      std::string nm = raw[e];
      if (name_count[nm] > 1)
        nm += "@" + paths_[static_cast<std::size_t>(maximal_[static_cast<std::size_t>(
                        elem_maximal_[e])])].name;
      names.push_back(nm);
    }

    target_elems_.assign(q_.vertices.size(), {});
    for (std::size_t e = 0; e < elem_target_.size(); ++e)
      target_elems_[static_cast<std::size_t>(elem_target_[e])].push_back(static_cast<int>(e));

    std::vector<int> sigma(names.size());
    for (std::size_t v = 0; v < target_elems_.size(); ++v) {
      const auto& es = target_elems_[v];
      if (es.size() > 2)
        throw InvolutionArity("vertex '" + q_.vertices[v] + "' is the target of " +
                              std::to_string(es.size()) + " poset elements");
      if (es.size() == 1) sigma[static_cast<std::size_t>(es[0])] = es[0];
      if (es.size() == 2) {
        sigma[static_cast<std::size_t>(es[0])] = es[1];
        sigma[static_cast<std::size_t>(es[1])] = es[0];
      }
    }
    poset_ = make_poset(std::move(names), std::move(sigma));
  }

  Quiver q_;
  std::set<std::pair<int, int>> relations_;
  std::vector<PathData> paths_;
  std::map<std::string, int> by_name_;
  std::map<std::vector<int>, int> by_arrows_;
  std::vector<std::vector<std::pair<int, int>>> factorizations_;
  std::vector<int> maximal_;
  PosetPtr poset_;
  std::vector<int> poset_offsets_, elem_maximal_, elem_len_, elem_target_;
  std::vector<std::vector<int>> target_elems_;
};

using AlgebraPtr = std::shared_ptr<const GentleAlgebra>;

}  // namespace bondcat
