#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bondcat/errors.hpp"

namespace bondcat {

/// A finite linear order with an involution, the base 𝒴 of the graded poset.
/// Element order is the declaration order of `names`; `sigma` is a
/// self-inverse permutation of indices.
struct BasePoset {
  std::vector<std::string> names;
  std::vector<int> sigma;

  int size() const { return static_cast<int>(names.size()); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names[i] == name) return i;
    return -1;
  }

  bool operator==(const BasePoset&) const = default;
};

using PosetPtr = std::shared_ptr<const BasePoset>;

inline Report validate_poset(const BasePoset& p) {
  Report rep;
  for (int i = 0; i < p.size(); ++i)
    for (int j = i + 1; j < p.size(); ++j)
      if (p.names[i] == p.names[j]) rep.fail("duplicate element name '" + p.names[i] + "'");
  if (p.sigma.size() != p.names.size()) {
    rep.fail("involution table size != element count");
    return rep;
  }
  for (int i = 0; i < p.size(); ++i) {
    if (p.sigma[i] < 0 || p.sigma[i] >= p.size()) {
      rep.fail("involution maps '" + p.names[i] + "' outside the poset");
      continue;
    }
    if (p.sigma[p.sigma[i]] != i)
      rep.fail("involution is not self-inverse at '" + p.names[i] + "'");
  }
  return rep;
}

inline PosetPtr make_poset(std::vector<std::string> names, std::vector<int> sigma) {
  auto p = std::make_shared<BasePoset>(BasePoset{std::move(names), std::move(sigma)});
  Report rep = validate_poset(*p);
  if (!rep.ok()) throw Error("invalid poset: " + rep.str());
  return p;
}

/// Makes a poset from names plus a partial name->name involution map;
/// unlisted elements are fixed points.
inline PosetPtr make_poset(std::vector<std::string> names,
                           const std::map<std::string, std::string>& involution) {
  std::vector<int> sigma(names.size());
  BasePoset tmp{names, {}};
  for (std::size_t i = 0; i < names.size(); ++i) sigma[i] = static_cast<int>(i);
  for (const auto& [a, b] : involution) {
    int ia = tmp.index_of(a), ib = tmp.index_of(b);
    if (ia < 0 || ib < 0) throw Error("involution names unknown element '" + a + "'->'" + b + "'");
    sigma[static_cast<std::size_t>(ia)] = ib;
    sigma[static_cast<std::size_t>(ib)] = ia;
  }
  return make_poset(std::move(names), std::move(sigma));
}

/// An element [u, i] of 𝒴 x Z: a base element index plus an integer degree.
struct GradedElement {
  int base = 0;
  std::int64_t degree = 0;

  /// Anti-lexicographic order: degree decides first, base breaks ties.
  std::strong_ordering operator<=>(const GradedElement& o) const {
    if (degree != o.degree) return degree <=> o.degree;
    return base <=> o.base;
  }
  bool operator==(const GradedElement&) const = default;
};

inline std::strong_ordering compare(const GradedElement& a, const GradedElement& b) {
  return a <=> b;
}

inline GradedElement involution(const BasePoset& p, const GradedElement& x) {
  return GradedElement{p.sigma[static_cast<std::size_t>(x.base)], x.degree};
}

/// x with degree moved by dk; wraparound is a hard error, never silent.
inline GradedElement shifted(const GradedElement& x, std::int64_t dk) {
  if (dk > 0 && x.degree > std::numeric_limits<std::int64_t>::max() - dk)
    throw DegreeOverflow("degree shift overflows");
  if (dk < 0 && x.degree < std::numeric_limits<std::int64_t>::min() - dk)
    throw DegreeOverflow("degree shift underflows");
  return GradedElement{x.base, x.degree + dk};
}

inline std::string element_str(const BasePoset& p, const GradedElement& x) {
  return "[" + p.names[static_cast<std::size_t>(x.base)] + "," + std::to_string(x.degree) + "]";
}

inline void require_same_poset(const PosetPtr& a, const PosetPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b))
    throw ForeignElement("operands live over different base posets");
}

}  // namespace bondcat
