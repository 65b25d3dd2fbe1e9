#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "bondcat/errors.hpp"
#include "bondcat/fields.hpp"

namespace bondcat {

/// Exact affine system A x = b, assembled sparsely and solved by Gaussian
/// elimination with first-nonzero pivoting. There is no tolerance anywhere:
/// a system is either consistent or it is not.
template <Scalar K>
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t unknowns) : nvars_(unknowns) {}

  std::size_t unknowns() const { return nvars_; }
  std::size_t equations() const { return eqs_.size(); }

  /// Adds one equation sum(coeff_i * x_{var_i}) = rhs. Duplicate variable
  /// references accumulate.
  void add_equation(std::vector<std::pair<std::size_t, K>> terms, K rhs) {
    for (auto& [v, c] : terms)
      if (v >= nvars_) throw DimensionMismatch("equation references unknown variable");
    eqs_.push_back(Eq{std::move(terms), std::move(rhs)});
  }

  /// One exact solution with every free variable set to zero, or nullopt.
  std::optional<std::vector<K>> solve() const {
    return solve_with([](std::size_t) { return K(0); });
  }

  /// One exact solution with free variables drawn from `free_value`
  /// (used by the instance generators to sample solution spaces uniformly).
  std::optional<std::vector<K>> solve_with(
      const std::function<K(std::size_t)>& free_value) const {
    // dense augmented rows
    std::vector<std::vector<K>> rows;
    rows.reserve(eqs_.size());
    for (const Eq& e : eqs_) {
      std::vector<K> r(nvars_ + 1, K(0));
      for (const auto& [v, c] : e.terms) r[v] += c;
      r[nvars_] = e.rhs;
      bool any = false;
      for (std::size_t j = 0; j < nvars_; ++j)
        if (!is_zero(r[j])) {
          any = true;
          break;
        }
      if (!any) {
        if (!is_zero(r[nvars_])) return std::nullopt;  // 0 = nonzero
        continue;
      }
      rows.push_back(std::move(r));
    }

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nvars_ && rank < rows.size(); ++col) {
      std::size_t piv = rank;
      while (piv < rows.size() && is_zero(rows[piv][col])) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[rank], rows[piv]);
      K pinv = inverse(rows[rank][col]);
      for (std::size_t j = col; j <= nvars_; ++j) rows[rank][j] = rows[rank][j] * pinv;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == rank || is_zero(rows[r][col])) continue;
        K f = rows[r][col];
        for (std::size_t j = col; j <= nvars_; ++j)
          rows[r][j] = rows[r][j] - f * rows[rank][j];
      }
      pivot_col.push_back(col);
      ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (!is_zero(rows[r][nvars_])) return std::nullopt;

    std::vector<K> x(nvars_, K(0));
    std::vector<bool> pivotal(nvars_, false);
    for (std::size_t c : pivot_col) pivotal[c] = true;
    for (std::size_t v = 0; v < nvars_; ++v)
      if (!pivotal[v]) x[v] = free_value(v);
    for (std::size_t r = 0; r < rank; ++r) {
      std::size_t c = pivot_col[r];
      K val = rows[r][nvars_];
      for (std::size_t j = c + 1; j < nvars_; ++j)
        if (!is_zero(rows[r][j])) val -= rows[r][j] * x[j];
      x[c] = val;
    }
    return x;
  }

 private:
  struct Eq {
    std::vector<std::pair<std::size_t, K>> terms;
    K rhs;
  };

  std::size_t nvars_;
  std::vector<Eq> eqs_;
};

/// Spec-shaped convenience entry point: rows of coefficients plus right-hand
/// sides. Returns one exact assignment or nullopt when infeasible.
template <Scalar K>
std::optional<std::vector<K>> solve_affine(const std::vector<std::vector<K>>& coeff_rows,
                                           const std::vector<K>& rhs, std::size_t unknowns) {
  if (coeff_rows.size() != rhs.size())
    throw DimensionMismatch("coefficient row count != rhs count");
  LinearSystem<K> sys(unknowns);
  for (std::size_t i = 0; i < coeff_rows.size(); ++i) {
    if (coeff_rows[i].size() != unknowns)
      throw DimensionMismatch("coefficient row has wrong length");
    std::vector<std::pair<std::size_t, K>> terms;
    for (std::size_t j = 0; j < unknowns; ++j)
      if (!is_zero(coeff_rows[i][j])) terms.emplace_back(j, coeff_rows[i][j]);
    sys.add_equation(std::move(terms), rhs[i]);
  }
  return sys.solve();
}

}  // namespace bondcat
