#pragma once

#include <json.hpp>

#include "bondcat/complexes.hpp"
#include "bondcat/cones.hpp"
#include "bondcat/functor.hpp"
#include "bondcat/kmatrix.hpp"

namespace bondcat::io {

using nlohmann::json;

inline constexpr const char* kFormatTag = "bondcat/1";

/// Resolves "path or inline" references: loads a JSON file when handed a
/// string node. Callers that do not pass a loader get inline-only behavior.
using FileLoader = std::function<json(const std::string&)>;

inline json deref(const json& j, const FileLoader& loader, const std::string& ptr) {
  if (!j.is_string()) return j;
  if (!loader) throw ParseError(ptr, "file references are not available in this context");
  return loader(j.get<std::string>());
}

// ---- low-level helpers ----------------------------------------------------

inline const json& need(const json& j, const char* key, const std::string& ptr) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(ptr + "/" + key, "missing field");
  return j.at(key);
}

inline std::string need_string(const json& j, const char* key, const std::string& ptr) {
  const json& v = need(j, key, ptr);
  if (!v.is_string()) throw ParseError(ptr + "/" + key, "expected a string");
  return v.get<std::string>();
}

template <Scalar K>
json scalar_to_json(const K& x);
template <>
inline json scalar_to_json<Rational>(const Rational& x) {
  return scalar_to_string(x);
}
template <>
inline json scalar_to_json<Gf>(const Gf& x) {
  return x.value();
}

template <Scalar K>
K scalar_from_json(const json& j, const std::string& ptr) {
  try {
    if (j.is_number_integer()) return K(j.get<long long>());
    if (j.is_string()) return scalar_from_string<K>(j.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(ptr, e.what());
  }
  throw ParseError(ptr, "expected an integer or a scalar string");
}

template <Scalar K>
json mat_to_json(const Mat<K>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json<K>(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Scalar K>
Mat<K> mat_from_json(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw ParseError(ptr, "expected an array of rows");
  std::size_t rows = j.size(), cols = 0;
  std::vector<K> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array()) throw ParseError(ptr + "/" + std::to_string(i), "expected a row array");
    if (i == 0)
      cols = row.size();
    else if (row.size() != cols)
      throw ParseError(ptr + "/" + std::to_string(i), "ragged matrix");
    for (std::size_t k = 0; k < row.size(); ++k)
      entries.push_back(
          scalar_from_json<K>(row[k], ptr + "/" + std::to_string(i) + "/" + std::to_string(k)));
  }
  return Mat<K>(rows, cols, std::move(entries));
}

// ---- poset ------------------------------------------------------------------

inline json poset_to_json(const BasePoset& p) {
  json inv = json::object();
  for (int i = 0; i < p.size(); ++i)
    if (p.sigma[static_cast<std::size_t>(i)] > i)
      inv[p.names[static_cast<std::size_t>(i)]] =
          p.names[static_cast<std::size_t>(p.sigma[static_cast<std::size_t>(i)])];
  return json{{"elements", p.names}, {"involution", inv}};
}

inline PosetPtr poset_from_json(const json& j, const std::string& ptr) {
  const json& els = need(j, "elements", ptr);
  if (!els.is_array()) throw ParseError(ptr + "/elements", "expected an array");
  std::vector<std::string> names;
  for (const auto& e : els) {
    if (!e.is_string()) throw ParseError(ptr + "/elements", "element names must be strings");
    names.push_back(e.get<std::string>());
  }
  std::map<std::string, std::string> inv;
  if (j.contains("involution")) {
    const json& iv = j.at("involution");
    if (!iv.is_object()) throw ParseError(ptr + "/involution", "expected an object");
    for (auto it = iv.begin(); it != iv.end(); ++it) {
      if (!it.value().is_string())
        throw ParseError(ptr + "/involution/" + it.key(), "expected a string");
      inv[it.key()] = it.value().get<std::string>();
    }
  }
  try {
    return make_poset(std::move(names), inv);
  } catch (const Error& e) {
    throw ParseError(ptr, e.what());
  }
}

inline json element_to_json(const BasePoset& p, const GradedElement& x) {
  return json::array({p.names[static_cast<std::size_t>(x.base)], x.degree});
}

inline GradedElement element_from_json(const BasePoset& p, const json& j, const std::string& ptr) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_number_integer())
    throw ParseError(ptr, "expected [name, degree]");
  int idx = p.index_of(j[0].get<std::string>());
  if (idx < 0) throw ParseError(ptr, "unknown poset element '" + j[0].get<std::string>() + "'");
  return GradedElement{idx, j[1].get<std::int64_t>()};
}

// ---- Bondarenko objects and morphisms --------------------------------------

template <Scalar K>
json object_to_json(const BondObject<K>& b) {
  json dims = json::array();
  for (const auto& [x, n] : b.dims) {
    json d = element_to_json(*b.poset, x);
    d.push_back(n);
    dims.push_back(std::move(d));
  }
  json blocks = json::array();
  for (const auto& [key, m] : b.blocks)
    blocks.push_back(json{{"row", element_to_json(*b.poset, key.first)},
                          {"col", element_to_json(*b.poset, key.second)},
                          {"entries", mat_to_json<K>(m)}});
  return json{{"format", kFormatTag},
              {"type", "object"},
              {"field", field_name<K>()},
              {"poset", poset_to_json(*b.poset)},
              {"dims", std::move(dims)},
              {"blocks", std::move(blocks)}};
}

template <Scalar K>
BondObject<K> object_from_json(const json& j, const std::string& ptr, PosetPtr poset = nullptr) {
  if (!poset) {
    poset = poset_from_json(need(j, "poset", ptr), ptr + "/poset");
  } else if (j.is_object() && j.contains("poset")) {
    PosetPtr own = poset_from_json(j.at("poset"), ptr + "/poset");
    if (!(*own == *poset))
      throw ParseError(ptr + "/poset", "poset differs from the one fixed by the context");
  }
  BondObject<K> b;
  b.poset = poset;
  const json& dims = need(j, "dims", ptr);
  if (!dims.is_array()) throw ParseError(ptr + "/dims", "expected an array");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const json& d = dims[i];
    std::string dptr = ptr + "/dims/" + std::to_string(i);
    if (!d.is_array() || d.size() != 3) throw ParseError(dptr, "expected [name, degree, size]");
    GradedElement x = element_from_json(*poset, json::array({d[0], d[1]}), dptr);
    if (!d[2].is_number_unsigned() && !d[2].is_number_integer())
      throw ParseError(dptr + "/2", "band size must be a non-negative integer");
    long long n = d[2].get<long long>();
    if (n < 0) throw ParseError(dptr + "/2", "band size must be non-negative");
    if (b.dims.count(x)) throw ParseError(dptr, "duplicate band");
    if (n > 0) b.dims[x] = static_cast<std::size_t>(n);
    else b.dims.emplace(x, 0);  // remembered for the duplicate check, dropped by normalize
  }
  for (auto it = b.dims.begin(); it != b.dims.end();)
    it = it->second == 0 ? b.dims.erase(it) : std::next(it);
  if (j.contains("blocks")) {
    const json& blocks = j.at("blocks");
    if (!blocks.is_array()) throw ParseError(ptr + "/blocks", "expected an array");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      std::string bptr = ptr + "/blocks/" + std::to_string(i);
      const json& blk = blocks[i];
      GradedElement r = element_from_json(*poset, need(blk, "row", bptr), bptr + "/row");
      GradedElement c = element_from_json(*poset, need(blk, "col", bptr), bptr + "/col");
      if (b.blocks.count({r, c})) throw ParseError(bptr, "duplicate block");
      b.blocks[{r, c}] = mat_from_json<K>(need(blk, "entries", bptr), bptr + "/entries");
    }
  }
  return b;
}

template <Scalar K>
json morphism_to_json(const BondMorphism<K>& t, const char* type = "morphism") {
  json blocks = json::array();
  for (const auto& [key, m] : t.blocks)
    blocks.push_back(json{{"row", element_to_json(*t.source.poset, key.first)},
                          {"col", element_to_json(*t.source.poset, key.second)},
                          {"entries", mat_to_json<K>(m)}});
  return json{{"format", kFormatTag}, {"type", type},
              {"field", field_name<K>()}, {"source", object_to_json(t.source)},
              {"target", object_to_json(t.target)}, {"blocks", std::move(blocks)}};
}

template <Scalar K>
BlockMap<K> blockmap_from_json(const json& j, const BasePoset& p, const std::string& ptr) {
  BlockMap<K> out;
  if (!j.is_array()) throw ParseError(ptr, "expected an array");
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string bptr = ptr + "/" + std::to_string(i);
    const json& blk = j[i];
    GradedElement r = element_from_json(p, need(blk, "row", bptr), bptr + "/row");
    GradedElement c = element_from_json(p, need(blk, "col", bptr), bptr + "/col");
    if (out.count({r, c})) throw ParseError(bptr, "duplicate block");
    out[{r, c}] = mat_from_json<K>(need(blk, "entries", bptr), bptr + "/entries");
  }
  return out;
}

template <Scalar K>
BondMorphism<K> morphism_from_json(const json& j, const std::string& ptr) {
  BondObject<K> src = object_from_json<K>(need(j, "source", ptr), ptr + "/source");
  BondObject<K> dst = object_from_json<K>(need(j, "target", ptr), ptr + "/target", src.poset);
  if (j.contains("poset"))
    throw ParseError(ptr + "/poset", "morphisms carry posets inside source/target");
  BondMorphism<K> t{std::move(src), std::move(dst), {}};
  if (j.contains("blocks"))
    t.blocks = blockmap_from_json<K>(j.at("blocks"), *t.source.poset, ptr + "/blocks");
  return t;
}

template <Scalar K>
json witness_to_json(const KMatrix<K>& l) {
  json blocks = json::array();
  for (const auto& [key, m] : l.blocks)
    blocks.push_back(json{{"row", element_to_json(*l.source.poset, key.first)},
                          {"col", element_to_json(*l.source.poset, key.second)},
                          {"entries", mat_to_json<K>(m)}});
  return json{{"format", kFormatTag},        {"type", "witness"},
              {"variant", variant_name(l.variant)}, {"field", field_name<K>()},
              {"source", object_to_json(l.source)}, {"target", object_to_json(l.target)},
              {"blocks", std::move(blocks)}};
}

template <Scalar K>
KMatrix<K> witness_from_json(const json& j, const std::string& ptr) {
  std::string v = need_string(j, "variant", ptr);
  WitnessVariant variant;
  if (v == "K")
    variant = WitnessVariant::K;
  else if (v == "kappa")
    variant = WitnessVariant::Kappa;
  else
    throw ParseError(ptr + "/variant", "expected \"K\" or \"kappa\"");
  BondObject<K> src = object_from_json<K>(need(j, "source", ptr), ptr + "/source");
  BondObject<K> dst = object_from_json<K>(need(j, "target", ptr), ptr + "/target", src.poset);
  KMatrix<K> l{variant, std::move(src), std::move(dst), {}};
  if (j.contains("blocks"))
    l.blocks = blockmap_from_json<K>(j.at("blocks"), *l.source.poset, ptr + "/blocks");
  return l;
}

template <Scalar K>
json triangle_to_json(const Triangle<K>& t) {
  return json{{"format", kFormatTag},       {"type", "triangle"},
              {"field", field_name<K>()},   {"X", object_to_json(t.X)},
              {"Y", object_to_json(t.Y)},   {"Z", object_to_json(t.Z)},
              {"u", morphism_to_json(t.u)}, {"v", morphism_to_json(t.v)},
              {"w", morphism_to_json(t.w)}};
}

template <Scalar K>
Triangle<K> triangle_from_json(const json& j, const std::string& ptr,
                               const FileLoader& loader = nullptr) {
  Triangle<K> t;
  t.X = object_from_json<K>(deref(need(j, "X", ptr), loader, ptr + "/X"), ptr + "/X");
  t.Y = object_from_json<K>(deref(need(j, "Y", ptr), loader, ptr + "/Y"), ptr + "/Y", t.X.poset);
  t.Z = object_from_json<K>(deref(need(j, "Z", ptr), loader, ptr + "/Z"), ptr + "/Z", t.X.poset);
  t.u = morphism_from_json<K>(deref(need(j, "u", ptr), loader, ptr + "/u"), ptr + "/u");
  t.v = morphism_from_json<K>(deref(need(j, "v", ptr), loader, ptr + "/v"), ptr + "/v");
  t.w = morphism_from_json<K>(deref(need(j, "w", ptr), loader, ptr + "/w"), ptr + "/w");
  return t;
}

// ---- gentle algebras --------------------------------------------------------

inline json quiver_to_json(const GentleAlgebra& a) {
  const Quiver& q = a.quiver();
  json arrows = json::array();
  for (const auto& ar : q.arrows)
    arrows.push_back(json{{"name", ar.name},
                          {"from", q.vertices[static_cast<std::size_t>(ar.from)]},
                          {"to", q.vertices[static_cast<std::size_t>(ar.to)]}});
  json rels = json::array();
  for (const auto& [x, y] : a.relations())
    rels.push_back(json::array({q.arrows[static_cast<std::size_t>(x)].name,
                                q.arrows[static_cast<std::size_t>(y)].name}));
  json order = json::array();
  for (int m : a.maximal_paths()) order.push_back(a.path(m).name);
  return json{{"format", kFormatTag}, {"type", "quiver"},     {"vertices", q.vertices},
              {"arrows", arrows},     {"relations", rels},    {"maximal_order", order}};
}

inline AlgebraPtr algebra_from_json(const json& j, const std::string& ptr) {
  Quiver q;
  const json& vs = need(j, "vertices", ptr);
  if (!vs.is_array()) throw ParseError(ptr + "/vertices", "expected an array");
  for (const auto& v : vs) {
    if (!v.is_string()) throw ParseError(ptr + "/vertices", "vertex names must be strings");
    q.vertices.push_back(v.get<std::string>());
  }
  const json& as = need(j, "arrows", ptr);
  if (!as.is_array()) throw ParseError(ptr + "/arrows", "expected an array");
  for (std::size_t i = 0; i < as.size(); ++i) {
    std::string aptr = ptr + "/arrows/" + std::to_string(i);
    Arrow ar;
    ar.name = need_string(as[i], "name", aptr);
    ar.from = q.vertex_index(need_string(as[i], "from", aptr));
    ar.to = q.vertex_index(need_string(as[i], "to", aptr));
    if (ar.from < 0 || ar.to < 0) throw ParseError(aptr, "arrow endpoint is not a vertex");
    q.arrows.push_back(std::move(ar));
  }
  std::set<std::pair<int, int>> rels;
  if (j.contains("relations")) {
    const json& rs = j.at("relations");
    if (!rs.is_array()) throw ParseError(ptr + "/relations", "expected an array");
    for (std::size_t i = 0; i < rs.size(); ++i) {
      std::string rptr = ptr + "/relations/" + std::to_string(i);
      if (!rs[i].is_array() || rs[i].size() != 2)
        throw ParseError(rptr, "expected [first-arrow, second-arrow]");
      int a = q.arrow_index(rs[i][0].get<std::string>());
      int b = q.arrow_index(rs[i][1].get<std::string>());
      if (a < 0 || b < 0) throw ParseError(rptr, "relation references an unknown arrow");
      rels.insert({a, b});
    }
  }
  std::vector<std::string> order;
  if (j.contains("maximal_order"))
    for (const auto& m : j.at("maximal_order")) order.push_back(m.get<std::string>());
  try {
    return std::make_shared<GentleAlgebra>(std::move(q), std::move(rels), order);
  } catch (const Error& e) {
    throw ParseError(ptr, e.what());
  }
}

// ---- complexes and chain maps ------------------------------------------------

template <Scalar K>
json complex_to_json(const ProjComplex<K>& p) {
  const Quiver& q = p.algebra->quiver();
  json degrees = json::object();
  for (const auto& [key, n] : p.mult)
    degrees[std::to_string(key.second)][q.vertices[static_cast<std::size_t>(key.first)]] = n;
  json diffs = json::object();
  for (const auto& [key, m] : p.diff)
    diffs[std::to_string(key.second)].push_back(
        json{{"path", p.algebra->path(key.first).name}, {"matrix", mat_to_json<K>(m)}});
  return json{{"format", kFormatTag},          {"type", "complex"},
              {"field", field_name<K>()},      {"algebra", quiver_to_json(*p.algebra)},
              {"degrees", std::move(degrees)}, {"differentials", std::move(diffs)}};
}

inline std::int64_t parse_degree_key(const std::string& s, const std::string& ptr) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(ptr, "degree keys must be integers, got '" + s + "'");
  }
}

template <Scalar K>
ProjComplex<K> complex_from_json(const json& j, const std::string& ptr,
                                 AlgebraPtr algebra = nullptr,
                                 const FileLoader& loader = nullptr) {
  if (!algebra)
    algebra = algebra_from_json(deref(need(j, "algebra", ptr), loader, ptr + "/algebra"),
                                ptr + "/algebra");
  ProjComplex<K> p;
  p.algebra = algebra;
  const Quiver& q = algebra->quiver();
  const json& degrees = need(j, "degrees", ptr);
  if (!degrees.is_object()) throw ParseError(ptr + "/degrees", "expected an object");
  for (auto it = degrees.begin(); it != degrees.end(); ++it) {
    std::int64_t deg = parse_degree_key(it.key(), ptr + "/degrees");
    if (!it.value().is_object())
      throw ParseError(ptr + "/degrees/" + it.key(), "expected {vertex: count}");
    for (auto vt = it.value().begin(); vt != it.value().end(); ++vt) {
      int v = q.vertex_index(vt.key());
      if (v < 0) throw ParseError(ptr + "/degrees/" + it.key(), "unknown vertex '" + vt.key() + "'");
      long long n = vt.value().get<long long>();
      if (n < 0) throw ParseError(ptr + "/degrees/" + it.key() + "/" + vt.key(), "negative count");
      if (n > 0) p.mult[{v, deg}] = static_cast<std::size_t>(n);
    }
  }
  if (j.contains("differentials")) {
    const json& diffs = j.at("differentials");
    if (!diffs.is_object()) throw ParseError(ptr + "/differentials", "expected an object");
    for (auto it = diffs.begin(); it != diffs.end(); ++it) {
      std::int64_t deg = parse_degree_key(it.key(), ptr + "/differentials");
      if (!it.value().is_array())
        throw ParseError(ptr + "/differentials/" + it.key(), "expected an array");
      for (std::size_t i = 0; i < it.value().size(); ++i) {
        std::string dptr = ptr + "/differentials/" + it.key() + "/" + std::to_string(i);
        const json& entry = it.value()[i];
        int w = algebra->path_id(need_string(entry, "path", dptr));
        if (w < 0) throw ParseError(dptr + "/path", "unknown path");
        if (p.diff.count({w, deg})) throw ParseError(dptr, "duplicate differential block");
        p.diff[{w, deg}] = mat_from_json<K>(need(entry, "matrix", dptr), dptr + "/matrix");
      }
    }
  }
  return p;
}

template <Scalar K>
json chain_map_to_json(const ChainMap<K>& f) {
  json blocks = json::object();
  for (const auto& [key, m] : f.blocks)
    blocks[std::to_string(key.second)].push_back(
        json{{"path", f.source.algebra->path(key.first).name}, {"matrix", mat_to_json<K>(m)}});
  return json{{"format", kFormatTag},           {"type", "chainmap"},
              {"field", field_name<K>()},       {"source", complex_to_json(f.source)},
              {"target", complex_to_json(f.target)}, {"blocks", std::move(blocks)}};
}

template <Scalar K>
ChainMap<K> chain_map_from_json(const json& j, const std::string& ptr,
                                const FileLoader& loader = nullptr) {
  ChainMap<K> f;
  f.source = complex_from_json<K>(deref(need(j, "source", ptr), loader, ptr + "/source"),
                                  ptr + "/source", nullptr, loader);
  f.target = complex_from_json<K>(deref(need(j, "target", ptr), loader, ptr + "/target"),
                                  ptr + "/target", f.source.algebra, loader);
  if (j.contains("blocks")) {
    const json& blocks = j.at("blocks");
    if (!blocks.is_object()) throw ParseError(ptr + "/blocks", "expected an object");
    for (auto it = blocks.begin(); it != blocks.end(); ++it) {
      std::int64_t deg = parse_degree_key(it.key(), ptr + "/blocks");
      for (std::size_t i = 0; i < it.value().size(); ++i) {
        std::string bptr = ptr + "/blocks/" + it.key() + "/" + std::to_string(i);
        const json& entry = it.value()[i];
        int w = f.source.algebra->path_id(need_string(entry, "path", bptr));
        if (w < 0) throw ParseError(bptr + "/path", "unknown path");
        if (f.blocks.count({w, deg})) throw ParseError(bptr, "duplicate block");
        f.blocks[{w, deg}] = mat_from_json<K>(need(entry, "matrix", bptr), bptr + "/matrix");
      }
    }
  }
  return f;
}

// ---- top-level file handling -------------------------------------------------

inline json parse_text(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("/", what + ": not valid JSON");
  return j;
}

inline std::string type_of(const json& j) {
  if (j.is_object() && j.contains("type") && j.at("type").is_string())
    return j.at("type").get<std::string>();
  return "";
}

inline std::string field_of(const json& j, const std::string& fallback = "rational") {
  if (j.is_object() && j.contains("field") && j.at("field").is_string())
    return j.at("field").get<std::string>();
  return fallback;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace bondcat::io
